// Acceptance gate: one pass/fail line per criterion; exit code = #failures.
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "germforge/parse.hpp"
#include "germforge/report.hpp"

using namespace germforge;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
};

EstimatorConfig cfg_for(std::uint64_t seed) {
    EstimatorConfig cfg;
    cfg.r0 = 0.2;
    cfg.rho = 0.7;
    cfg.K = 10;
    cfg.starts = 16;
    cfg.seed = seed;
    return cfg;
}

PolyMap fam_a(const Rational& t) {
    return parse_map_fixed("f(x,y) = (x, y^2, y^3, x^3*y + t*x^2*y)", t);
}
PolyMap fam_b(const Rational& t) {
    return parse_map_fixed("f(x,y) = (x, y^2, y*(x^2+y^2), y*(x^4+y^6+t*y^2))", t);
}
PolyMap fam_c(const Rational& t) {
    return parse_map_fixed("f(x,y) = (x, y^2, y*(x^4+t*x*y^2), y*(y^4+t*x*y^2))", t);
}
PolyMap trefoil_germ() {
    return parse_map_fixed("f(x,y) = (x^2-y^2, 2*x*y, x^3-3*x*y^2, 3*x^2*y-y^3)");
}
PolyMap unknot_germ() { return parse_map_fixed("f(x,y) = (x, y, 0, 0)"); }

std::string alexander_of(const PolyMap& f, double eps, std::uint64_t seed) {
    auto fiber = trace_fiber(f, eps, cfg_for(seed));
    LinkCurve link = embed_link(f, fiber, eps);
    KnotDiagram d = simplify_diagram(project_diagram(link, seed));
    return alexander_polynomial(d).to_string();
}

void criterion1(Check& c) {
    struct Case {
        PolyMap sys;
        Rational expect;
        const char* label;
    };
    std::vector<Case> cases{
        {corank1_reduce(fam_a(1)), Rational(2), "family A t=1"},
        {corank1_reduce(fam_a(0)), Rational(3), "family A t=0"},
        {corank1_reduce(fam_c(0)), Rational(4), "family C t=0"},
        {corank1_reduce(fam_c(1)), Rational(4), "family C t=1"},
        {corank1_reduce(fam_b(0)), Rational(2), "family B t=0"},
        {corank1_reduce(fam_b(1)), Rational(2), "family B t=1"},
    };
    for (const auto& k : cases) {
        ExponentEstimate e = estimate_exponent_at_zero(k.sys, cfg_for(0));
        c.require(e.arc_lower_bound.has_value(), std::string(k.label) + ": no arc bound");
        if (e.arc_lower_bound)
            c.require(*e.arc_lower_bound == k.expect,
                      std::string(k.label) + ": arc bound " + rational_to_string(*e.arc_lower_bound));
    }
}

void criterion2(Check& c) {
    struct Case {
        PolyMap sys;
        double expect;
        const char* label;
    };
    std::vector<Case> cases{
        {corank1_reduce(fam_a(1)), 2.0, "family A t=1"},
        {corank1_reduce(fam_a(0)), 3.0, "family A t=0"},
        {corank1_reduce(fam_c(1)), 4.0, "family C t=1"},
        {corank1_reduce(fam_b(1)), 2.0, "family B t=1"},
    };
    for (std::uint64_t seed : {1, 7, 42}) {
        for (const auto& k : cases) {
            ExponentEstimate e = estimate_exponent_at_zero(k.sys, cfg_for(seed));
            std::ostringstream tag;
            tag << k.label << " seed " << seed << ": fit " << e.fitted_alpha << " residual "
                << e.fit_residual;
            c.require(std::abs(e.fitted_alpha - k.expect) <= 0.2, tag.str());
            c.require(e.fit_residual < 0.1, tag.str());
        }
    }
}

void criterion3(Check& c) {
    auto d1 = quotient_dim(double_point_ideal(fam_b(1)), 14);
    c.require(d1.finite() && d1.dim == 2, "family B t=1: expected Finite(2)");
    auto d0 = quotient_dim(double_point_ideal(fam_b(0)), 14);
    c.require(d0.finite() && d0.dim == 4, "family B t=0: expected Finite(4)");
    auto u = quotient_dim(
        double_point_ideal(parse_map_fixed("f(x,y) = (x, y^2, y*(x^2+y^2), 0)")), 14);
    c.require(!u.finite(), "non-isolated germ: expected Unstabilized at 14");
}

void criterion4(Check& c) {
    std::mt19937_64 rng(20240817);
    const int n_max = 14;
    for (int trial = 0; trial < 20; ++trial) {
        int nv = 1 + static_cast<int>(rng() % 3);
        int ng = 1 + static_cast<int>(rng() % 4);
        std::vector<std::string> vars;
        for (int i = 0; i < nv; ++i) vars.push_back("v" + std::to_string(i));
        std::vector<Exponents> gens;
        for (int g = 0; g < ng; ++g) {
            Exponents e(nv, 0);
            int deg = 0;
            do {
                deg = 0;
                for (int i = 0; i < nv; ++i) {
                    e[i] = static_cast<int>(rng() % 6);
                    deg += e[i];
                }
            } while (deg == 0 || deg > 5);
            gens.push_back(e);
        }
        IdealGens ideal;
        ideal.nvars = nv;
        ideal.vars = vars;
        for (const auto& e : gens) ideal.generators.push_back(Poly::monomial(vars, e, 1));
        auto got = quotient_dim(ideal, n_max);

        auto divisible = [&](const Exponents& m) {
            for (const auto& g : gens) {
                bool div = true;
                for (int i = 0; i < nv; ++i)
                    if (m[i] < g[i]) div = false;
                if (div) return true;
            }
            return false;
        };
        std::vector<int> std_per_deg(n_max, 0);
        const int cap = n_max - 1;
        std::vector<int> cur(nv, 0);
        while (true) {
            int deg = total_degree(cur);
            if (deg <= cap && !divisible(cur)) ++std_per_deg[deg];
            int i = 0;
            while (i < nv) {
                if (++cur[i] <= cap) break;
                cur[i] = 0;
                ++i;
            }
            if (i == nv) break;
        }
        int expect_dim = 0;
        bool expect_finite = false;
        std::vector<int> dN(n_max + 1, 0);
        int running = 0;
        for (int N = 1; N <= n_max; ++N) {
            running += std_per_deg[N - 1];
            dN[N] = running;
            if (N >= 2 && dN[N] == dN[N - 1]) {
                expect_finite = true;
                expect_dim = dN[N];
                break;
            }
        }
        if (!expect_finite) expect_dim = dN[n_max];
        std::ostringstream tag;
        tag << "trial " << trial << ": got " << (got.finite() ? "Finite" : "Unstabilized") << " "
            << got.dim << ", oracle " << (expect_finite ? "Finite" : "Unstabilized") << " "
            << expect_dim;
        c.require(got.finite() == expect_finite && got.dim == expect_dim, tag.str());
    }
}

void criterion5(Check& c) {
    for (int l : {1, 2, 3}) {
        PolyMap f =
            parse_map_fixed("f(x,y) = (x, y^2, y^" + std::to_string(2 * l + 1) + ", 0)");
        ExponentEstimate e = estimate_double_point_exponent(f, cfg_for(0));
        std::ostringstream tag;
        tag << "l=" << l << ": arc bound "
            << (e.arc_lower_bound ? rational_to_string(*e.arc_lower_bound) : "none") << ", fit "
            << e.fitted_alpha << " (asserted formula value " << 2 * l << ")";
        c.require(e.arc_lower_bound.has_value() && *e.arc_lower_bound == Rational(2 * l),
                  tag.str());
        c.require(std::abs(e.fitted_alpha - 2 * l) <= 0.2, tag.str());
    }
}

void criterion6(Check& c) {
    const char* immersive[] = {
        "f(x,y) = (x, y, 0, 0)",
        "f(x,y) = (x, y, x^2, x*y)",
        "f(x,y) = (x, y, x^2+y^2, x^3)",
        "f(x,y) = (x, y, y^2, x^2*y)",
        "f(x,y) = (x, y, x*y, x^3)",
    };
    const char* singular[] = {
        "f(x,y) = (x, y^2, y^3, 0)",
        "f(x,y) = (x, y^2, y^5, 0)",
        "f(x,y) = (x, y^2, y^7, 0)",
        "f(x,y) = (x, y^2, y^3, x^3*y)",
        "f(x,y) = (x, y^2, y*(x^2+y^2), y*(x^4+y^6+y^2))",
    };
    for (const char* text : immersive) {
        RegularityVerdict v = classify_regularity(parse_map_fixed(text), cfg_for(0));
        std::ostringstream tag;
        tag << text << ": fit " << v.double_point_estimate.fitted_alpha;
        c.require(v.corank0 && v.classification == RegularityClass::SmoothEmbedding, tag.str());
        c.require(std::abs(v.double_point_estimate.fitted_alpha - 1.0) <= 0.1, tag.str());
    }
    for (const char* text : singular) {
        RegularityVerdict v = classify_regularity(parse_map_fixed(text), cfg_for(0));
        std::ostringstream tag;
        tag << text << ": fit " << v.double_point_estimate.fitted_alpha;
        c.require(!v.corank0 && v.classification != RegularityClass::SmoothEmbedding, tag.str());
        c.require(v.double_point_estimate.fitted_alpha > 1.5, tag.str());
    }
}

void criterion7(Check& c) {
    DeterminacyReport r = c0_determinacy_degree(fam_a(0), cfg_for(0));
    c.require(r.alpha_tilde.arc_lower_bound.has_value(), "no exact alpha~ bound");
    if (r.alpha_tilde.arc_lower_bound) {
        int first = determinacy_bracket_exact(*r.alpha_tilde.arc_lower_bound) + 2;
        std::ostringstream tag;
        tag << "first term " << first << " from alpha~ "
            << rational_to_string(*r.alpha_tilde.arc_lower_bound);
        c.require(first == 5, tag.str());
    }
    bool beta_matched = r.beta.arc_lower_bound.has_value() &&
                        std::abs(r.beta.fitted_alpha - r.beta.arc_lower_bound->get_d()) <= 0.25;
    c.require(beta_matched, "gradient exponent channels disagree");
    if (beta_matched) c.require(r.rigorous, "rigorous flag not set despite matching channels");
}

void criterion8(Check& c) {
    std::string unknot = alexander_of(unknot_germ(), 0.5, 7);
    c.require(unknot == "1", "unknot: Alexander " + unknot);
    {
        auto fiber = trace_fiber(unknot_germ(), 0.5, cfg_for(7));
        KnotDiagram d = simplify_diagram(project_diagram(embed_link(unknot_germ(), fiber, 0.5), 7));
        c.require(d.crossing_count == 0,
                  "unknot: " + std::to_string(d.crossing_count) + " crossings after simplify");
    }
    for (double eps : {0.2, 0.3, 0.4}) {
        auto fiber = trace_fiber(trefoil_germ(), eps, cfg_for(7));
        LinkCurve link = embed_link(trefoil_germ(), fiber, eps);
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            KnotDiagram d = simplify_diagram(project_diagram(link, seed));
            std::string alex = alexander_polynomial(d).to_string();
            std::ostringstream tag;
            tag << "trefoil eps " << eps << " seed " << seed << ": Alexander " << alex;
            c.require(alex == "t^2 - t + 1", tag.str());
        }
    }
}

void criterion9(Check& c) {
    auto cfg = cfg_for(7);
    Json base = link_json(trefoil_germ(), 0.3, 7, cfg);
    // source rotation by 90 degrees: (x, y) -> (-y, x)
    Json src = link_json(
        parse_map_fixed("f(x,y) = (y^2-x^2, -2*x*y, 3*x^2*y-y^3, 3*x*y^2-x^3)"), 0.3, 7, cfg);
    // target rotation by the rational orthogonal [[3/5,4/5],[-4/5,3/5]] (+) I
    Json tgt = link_json(
        parse_map_fixed(
            "f(x,y) = (3/5*x^2 - 3/5*y^2 + 8/5*x*y, -4/5*x^2 + 4/5*y^2 + 6/5*x*y, "
            "x^3-3*x*y^2, 3*x^2*y-y^3)"),
        0.3, 7, cfg);
    Json unk = link_json(unknot_germ(), 0.5, 7, cfg);

    auto wrap = [](const Json& l) {
        Json j;
        j["link"] = l;
        return j;
    };
    c.require(!compare_links(wrap(base), wrap(src)).distinguished,
              "source reparametrization was distinguished");
    c.require(!compare_links(wrap(base), wrap(tgt)).distinguished,
              "target reparametrization was distinguished");
    CompareVerdict v = compare_links(wrap(base), wrap(unk));
    c.require(v.distinguished && v.invariant == "alexander",
              "trefoil vs unknot not distinguished");
}

void criterion10(Check& c) {
    fs::path dir = fs::temp_directory_path() / "germforge_acceptance";
    fs::create_directories(dir);
    fs::path a = dir / "a.json", b = dir / "b.json";
    std::string base = std::string(GERMFORGE_BIN) +
                       " analyze --map 'f(x,y) = (x, y^2, y^3, x^3*y + t*x^2*y)'"
                       " --t 1 --seed 7 --starts 8 --radii 0.2:0.7:8 --out ";
    auto run = [](const std::string& cmd) {
        int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
        return rc == -1 ? -1 : WEXITSTATUS(rc);
    };
    c.require(run(base + a.string()) == 0, "first analyze run failed");
    c.require(run(base + b.string()) == 0, "second analyze run failed");
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string sa = slurp(a), sb = slurp(b);
    c.require(!sa.empty() && sa == sb, "analyze outputs differ between runs");
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void(Check&)> fn;
    };
    std::vector<Criterion> criteria{
        {"1 exponent regression, exact arc channel", criterion1},
        {"2 exponent regression, numeric channel", criterion2},
        {"3 delta invariant on the worked family", criterion3},
        {"4 delta oracle vs standard-monomial counting", criterion4},
        {"5 double-point exponent closed formula", criterion5},
        {"6 regularity dichotomy on the 10-germ corpus", criterion6},
        {"7 determinacy degree bound", criterion7},
        {"8 link pipeline: unknot and trefoil", criterion8},
        {"9 invariance under reparametrization", criterion9},
        {"10 byte-identical reports", criterion10},
    };
    int failures = 0;
    for (auto& cr : criteria) {
        Check c;
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        if (c.ok) {
            std::cout << "criterion " << cr.label << ": PASS\n";
        } else {
            std::cout << "criterion " << cr.label << ": FAIL (" << c.detail << ")\n";
            ++failures;
        }
        std::cout.flush();
    }
    return failures;
}
