#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "germforge/parse.hpp"
#include "germforge/report.hpp"

namespace {

using germforge::Json;

std::string slurp_or_literal(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    return arg; // inline map text
}

germforge::Rational parse_rational(const std::string& s) {
    germforge::Rational r(s);
    r.canonicalize();
    return r;
}

struct CommonFlags {
    std::string map_arg;
    std::string t_str = "0";
    bool t_given = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int nmax = 14;
    double epsilon = 0.3;
    std::string radii;
    int starts = 16;
    std::string out;
    std::string svg;

    void attach(CLI::App* cmd, bool needs_map = true) {
        auto* m = cmd->add_option("--map", map_arg, "map file or inline definition");
        if (needs_map) m->required();
        cmd->add_option("--t", t_str, "parameter value (rational)")
            ->each([this](const std::string&) { t_given = true; });
        cmd->add_option("--seed", seed, "RNG seed")
            ->each([this](const std::string&) { seed_given = true; });
        cmd->add_option("--nmax", nmax, "truncation degree for delta");
        cmd->add_option("--epsilon", epsilon, "link sphere radius");
        cmd->add_option("--radii", radii, "estimator ladder r0:rho:K");
        cmd->add_option("--starts", starts, "multistart count");
        cmd->add_option("--out", out, "output JSON path (default stdout)");
        cmd->add_option("--svg", svg, "knot diagram SVG path");
    }

    germforge::AnalysisOptions options() const {
        germforge::AnalysisOptions opt;
        if (t_given) opt.t = parse_rational(t_str);
        opt.seed = seed;
        if (!seed_given) {
            if (const char* env = std::getenv("GERMFORGE_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
        }
        opt.nmax = nmax;
        opt.epsilon = epsilon;
        opt.estimator.starts = starts;
        opt.estimator.seed = opt.seed;
        if (!radii.empty()) {
            double r0, rho;
            int K;
            if (std::sscanf(radii.c_str(), "%lf:%lf:%d", &r0, &rho, &K) != 3)
                throw CLI::ValidationError("--radii expects r0:rho:K");
            opt.estimator.r0 = r0;
            opt.estimator.rho = rho;
            opt.estimator.K = K;
        }
        opt.estimator.validate();
        return opt;
    }

    germforge::PolyMap load_map(const germforge::AnalysisOptions& opt) const {
        std::string text = slurp_or_literal(map_arg);
        germforge::ParsedMap parsed = germforge::parse_map(text);
        return parsed.instantiate(opt.t.value_or(0));
    }
};

void emit(const Json& j, const std::string& out_path) {
    std::string body = j.dump(2);
    body.push_back('\n');
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << body;
    }
}

Json input_echo(const germforge::PolyMap& f, const germforge::AnalysisOptions& opt) {
    Json input;
    input["map"] = germforge::render(f);
    input["n"] = f.domain_dim();
    input["p"] = f.codomain_dim();
    input["t"] = opt.t ? Json(germforge::rational_to_string(*opt.t)) : Json(nullptr);
    return input;
}

Json meta_block(const germforge::AnalysisOptions& opt) {
    Json meta;
    meta["tool_version"] = germforge::kToolVersion;
    meta["seed"] = opt.seed;
    return meta;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial map germ analysis"};
    app.require_subcommand(1);

    CommonFlags flags;
    bool with_link = false;

    auto* analyze = app.add_subcommand("analyze", "full report");
    flags.attach(analyze);
    analyze->add_flag("--link", with_link, "include link invariants (n,p)=(2,4)");

    auto* exponent = app.add_subcommand("exponent", "Lojasiewicz exponent estimates");
    flags.attach(exponent);

    auto* delta = app.add_subcommand("delta", "delta invariant");
    flags.attach(delta);

    auto* link = app.add_subcommand("link", "link knot invariants");
    flags.attach(link);

    auto* determinacy = app.add_subcommand("determinacy", "C0-determinacy degree bound");
    flags.attach(determinacy);

    auto* compare = app.add_subcommand("compare", "compare two link reports");
    std::string a_path, b_path, cmp_out;
    compare->add_option("--a", a_path, "first report JSON")->required();
    compare->add_option("--b", b_path, "second report JSON")->required();
    compare->add_option("--out", cmp_out, "output JSON path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compare->parsed()) {
            std::ifstream fa(a_path), fb(b_path);
            if (!fa || !fb) {
                std::cerr << "error: cannot read report files\n";
                return 1;
            }
            Json ra = Json::parse(fa), rb = Json::parse(fb);
            germforge::CompareVerdict v = germforge::compare_links(ra, rb);
            Json j;
            j["schema"] = 1;
            j["verdict"] = v.distinguished ? "distinguished" : "consistent";
            j["invariant"] = v.distinguished ? Json(v.invariant) : Json(nullptr);
            emit(j, cmp_out);
            return 0;
        }

        germforge::AnalysisOptions opt = flags.options();
        opt.with_link = with_link || link->parsed();
        germforge::PolyMap f = flags.load_map(opt);

        Json j;
        if (analyze->parsed()) {
            j = germforge::analysis_report(f, opt);
            if (!flags.svg.empty() && !j["link"].is_null()) {
                std::string svg;
                germforge::link_json(f, opt.epsilon, opt.seed, opt.estimator, &svg);
                std::ofstream out(flags.svg, std::ios::binary);
                out << svg;
            }
        } else if (exponent->parsed()) {
            j["schema"] = 1;
            j["input"] = input_echo(f, opt);
            Json exps;
            exps["isolated_singularity"] = germforge::exponent_json(
                germforge::estimate_exponent_at_zero(germforge::isolated_singularity_system(f),
                                                     opt.estimator));
            exps["double_point"] = germforge::exponent_json(
                germforge::estimate_double_point_exponent(f, opt.estimator));
            exps["gradient"] = germforge::exponent_json(germforge::estimate_exponent_at_zero(
                germforge::grad_norm_sq(f), opt.estimator));
            j["exponents"] = exps;
            j["meta"] = meta_block(opt);
        } else if (delta->parsed()) {
            j["schema"] = 1;
            j["input"] = input_echo(f, opt);
            j["delta"] = germforge::dim_json(
                germforge::quotient_dim(germforge::double_point_ideal(f), opt.nmax));
            j["meta"] = meta_block(opt);
        } else if (link->parsed()) {
            j["schema"] = 1;
            j["input"] = input_echo(f, opt);
            std::string svg;
            j["link"] = germforge::link_json(f, opt.epsilon, opt.seed, opt.estimator,
                                             flags.svg.empty() ? nullptr : &svg);
            if (!flags.svg.empty()) {
                std::ofstream out(flags.svg, std::ios::binary);
                out << svg;
            }
            j["meta"] = meta_block(opt);
        } else if (determinacy->parsed()) {
            j["schema"] = 1;
            j["input"] = input_echo(f, opt);
            try {
                j["determinacy"] =
                    germforge::determinacy_json(germforge::c0_determinacy_degree(f, opt.estimator));
            } catch (const germforge::OutOfScope& e) {
                j["determinacy"] = nullptr;
                j["note"] = e.what();
            }
            j["meta"] = meta_block(opt);
        }
        emit(j, flags.out);
    } catch (const germforge::SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const germforge::GermViolation& e) {
        std::cerr << "germ violation: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        // mathematical verdicts and runtime limits are reported, not failed
        std::cerr << "note: " << e.what() << "\n";
        Json j;
        j["schema"] = 1;
        j["error"] = e.what();
        emit(j, flags.out);
        return 0;
    }
    return 0;
}
