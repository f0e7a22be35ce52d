#include "germforge/localalgebra.hpp"

#include <algorithm>
#include <map>

namespace germforge {

namespace {

// Repeatedly eliminates variables via generators of the form c*x_a + h with
// h free of x_a (e.g. x'-x, u+y). Substituting x_a = -h/c is an exact local
// coordinate change, so every truncated dimension d_N is preserved.
struct ReducedIdeal {
    std::vector<std::string> vars;
    std::vector<Poly> gens;
};

ReducedIdeal eliminate_linear(const IdealGens& ideal) {
    std::vector<Poly> gens;
    for (const auto& g : ideal.generators)
        if (!g.is_zero()) gens.push_back(g);
    std::vector<std::string> vars = ideal.vars;
    bool changed = true;
    while (changed && !gens.empty()) {
        changed = false;
        const int nv = static_cast<int>(vars.size());
        for (size_t gi = 0; gi < gens.size() && !changed; ++gi) {
            const Poly& g = gens[gi];
            for (int var = 0; var < nv && !changed; ++var) {
                Exponents lin(nv, 0);
                lin[var] = 1;
                Rational c = g.coeff(lin);
                if (c == 0) continue;
                // x_a must not appear in any other term of g, and the rest
                // must vanish at 0 so the substitution stays in the maximal ideal.
                Poly rest = g - Poly::monomial(g.vars(), lin, c);
                if (rest.depends_on(var)) continue;
                if (rest.constant_term() != 0) continue;
                Poly value = rest.scaled(Rational(-1) / c);
                std::vector<Poly> next;
                for (size_t k = 0; k < gens.size(); ++k) {
                    if (k == gi) continue;
                    Poly sub = gens[k].substitute(var, value).drop_variable(var);
                    if (!sub.is_zero()) next.push_back(sub);
                }
                gens = std::move(next);
                vars.erase(vars.begin() + var);
                changed = true;
            }
        }
    }
    ReducedIdeal out;
    out.vars = std::move(vars);
    out.gens = std::move(gens);
    return out;
}

void enumerate_monomials(int nvars, int maxdeg, std::vector<Exponents>& out) {
    Exponents cur(nvars, 0);
    struct Rec {
        int nvars, maxdeg;
        std::vector<Exponents>& out;
        void run(int var, int remaining, Exponents& cur) {
            if (var == nvars) {
                out.push_back(cur);
                return;
            }
            for (int d = 0; d <= remaining; ++d) {
                cur[var] = d;
                run(var + 1, remaining - d, cur);
            }
            cur[var] = 0;
        }
    } rec{nvars, maxdeg, out};
    rec.run(0, maxdeg, cur);
    std::sort(out.begin(), out.end(), GrlexLess{});
}

using SparseRow = std::map<int, Rational>; // monomial id -> coefficient

} // namespace

DimResult quotient_dim(const IdealGens& ideal, int n_max) {
    if (n_max < 2) throw PolyError("quotient_dim: n_max must be >= 2");

    DimResult res;
    res.n_max = n_max;

    ReducedIdeal red = eliminate_linear(ideal);

    // Short-circuit: a unit generator makes the quotient zero-dimensional.
    bool unit = false;
    for (const auto& g : red.gens)
        if (g.constant_term() != 0) unit = true;

    const int nv = static_cast<int>(red.vars.size());
    const int D = n_max - 1; // monomials of degree <= D span {deg < n_max}

    std::vector<Exponents> mons;
    std::map<Exponents, int, GrlexLess> mon_id;
    std::vector<int> mon_deg;
    if (!unit) {
        enumerate_monomials(nv, D, mons);
        for (size_t i = 0; i < mons.size(); ++i) {
            mon_id.emplace(mons[i], static_cast<int>(i));
            mon_deg.push_back(total_degree(mons[i]));
        }
    }

    // Echelon basis of trunc_{n_max}(I), leading term = grlex-smallest.
    // Pivot leads of degree < N count the rank of the degree-N truncation.
    std::map<int, SparseRow> pivots; // lead id -> normalized row

    auto reduce_insert = [&](SparseRow row) {
        while (!row.empty()) {
            auto lead = row.begin();
            auto pit = pivots.find(lead->first);
            if (pit == pivots.end()) {
                Rational inv = Rational(1) / lead->second;
                for (auto& [id, c] : row) c *= inv;
                pivots.emplace(lead->first, std::move(row));
                return;
            }
            Rational factor = lead->second;
            for (const auto& [id, c] : pit->second) {
                auto it = row.find(id);
                if (it == row.end()) {
                    row.emplace(id, -factor * c);
                } else {
                    it->second -= factor * c;
                    if (it->second == 0) row.erase(it);
                }
            }
        }
    };

    if (!unit) {
        for (const auto& g : red.gens) {
            if (g.is_zero()) continue;
            int val = *g.valuation();
            for (const auto& m : mons) {
                if (total_degree(m) + val >= n_max) continue;
                SparseRow row;
                for (const auto& [e, c] : g.terms()) {
                    Exponents prod = e;
                    for (int i = 0; i < nv; ++i) prod[i] += m[i];
                    if (total_degree(prod) >= n_max) continue;
                    auto it = mon_id.find(prod);
                    row.emplace(it->second, c);
                }
                if (!row.empty()) reduce_insert(std::move(row));
            }
        }
    }

    // d_N per degree: monomial count minus pivot count below degree N.
    std::vector<int> mon_below(n_max + 1, 0), piv_below(n_max + 1, 0);
    if (!unit) {
        for (int d : mon_deg)
            for (int N = d + 1; N <= n_max; ++N) ++mon_below[N];
        for (const auto& [lead, row] : pivots) {
            int d = mon_deg[lead];
            for (int N = d + 1; N <= n_max; ++N) ++piv_below[N];
        }
    }

    for (int N = 1; N <= n_max; ++N) {
        int dN = unit ? 0 : mon_below[N] - piv_below[N];
        res.trace.emplace_back(N, dN);
        if (N >= 2) {
            int prev = res.trace[N - 2].second;
            if (prev == dN) {
                res.status = DimResult::Status::Finite;
                res.dim = dN;
                return res;
            }
        }
    }
    res.status = DimResult::Status::Unstabilized;
    res.dim = res.trace.back().second;
    return res;
}

} // namespace germforge
