#include "germforge/doublepoint.hpp"

#include <algorithm>

namespace germforge {

std::vector<std::string> doubled_vars(const std::vector<std::string>& vars) {
    std::vector<std::string> dv = vars;
    for (const auto& v : vars) dv.push_back(v + "'");
    return dv;
}

Poly lift_to_doubled(const Poly& p, const std::vector<bool>& primed) {
    const int n = p.nvars();
    std::vector<std::string> dv = doubled_vars(p.vars());
    std::vector<int> index_map(n);
    for (int i = 0; i < n; ++i) index_map[i] = primed.at(i) ? n + i : i;
    return p.with_vars(dv, index_map);
}

AlphaMatrix build_alpha(const PolyMap& f, Telescoping order) {
    const int n = f.domain_dim();
    const int p = f.codomain_dim();
    std::vector<std::string> dv = doubled_vars(f.vars());

    AlphaMatrix a;
    a.rows = p;
    a.cols = n;
    a.entries.reserve(static_cast<size_t>(p) * n);

    // Column order in which primes are introduced.
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    if (order == Telescoping::RightToLeft) std::reverse(cols.begin(), cols.end());

    std::vector<Poly> row(n, Poly(dv));
    for (int i = 0; i < p; ++i) {
        std::vector<bool> primed(n, false);
        Poly prev = lift_to_doubled(f.component(i), primed);
        for (int step = 0; step < n; ++step) {
            int j = cols[step];
            primed[j] = true;
            Poly next = lift_to_doubled(f.component(i), primed);
            row[j] = (next - prev).divide_by_linear(n + j, j);
            prev = next;
        }
        for (int j = 0; j < n; ++j) a.entries.push_back(row[j]);
    }
    return a;
}

namespace {

Poly determinant(const AlphaMatrix& a, const std::vector<int>& rows) {
    // Laplace expansion along the first selected row; sizes are tiny (n <= 4).
    const int n = static_cast<int>(rows.size());
    if (n == 1) return a.at(rows[0], 0);
    struct Rec {
        const AlphaMatrix& a;
        const std::vector<int>& rows;
        Poly run(int depth, std::vector<int>& free_cols) {
            if (depth == static_cast<int>(rows.size()) - 1)
                return a.at(rows[depth], free_cols[0]);
            Poly acc(a.entries.front().vars());
            for (size_t k = 0; k < free_cols.size(); ++k) {
                int col = free_cols[k];
                std::vector<int> rest;
                for (size_t m = 0; m < free_cols.size(); ++m)
                    if (m != k) rest.push_back(free_cols[m]);
                Poly sub = run(depth + 1, rest);
                Poly term = a.at(rows[depth], col) * sub;
                if (k % 2 == 1) term = -term;
                acc = acc + term;
            }
            return acc;
        }
    } rec{a, rows};
    std::vector<int> free_cols(a.cols);
    for (int j = 0; j < a.cols; ++j) free_cols[j] = j;
    return rec.run(0, free_cols);
}

void row_subsets(int p, int n, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    struct Rec {
        int p, n;
        std::vector<std::vector<int>>& out;
        void run(int start, std::vector<int>& cur) {
            if (static_cast<int>(cur.size()) == n) {
                out.push_back(cur);
                return;
            }
            for (int i = start; i < p; ++i) {
                cur.push_back(i);
                run(i + 1, cur);
                cur.pop_back();
            }
        }
    } rec{p, n, out};
    rec.run(0, cur);
}

} // namespace

std::vector<Poly> minors(const AlphaMatrix& a) {
    if (a.rows < a.cols) throw PolyError("minors: fewer rows than columns");
    std::vector<std::vector<int>> subsets;
    row_subsets(a.rows, a.cols, subsets);
    std::vector<Poly> out;
    out.reserve(subsets.size());
    for (const auto& rows : subsets) out.push_back(determinant(a, rows));
    return out;
}

PolyMap delta_tilde(const PolyMap& f, Telescoping order) {
    const int n = f.domain_dim();
    if (n > f.codomain_dim()) throw PolyError("delta_tilde requires n <= p");
    std::vector<Poly> comps;
    std::vector<bool> all_primed(n, true), none(n, false);
    for (int i = 0; i < f.codomain_dim(); ++i)
        comps.push_back(lift_to_doubled(f.component(i), all_primed) -
                        lift_to_doubled(f.component(i), none));
    AlphaMatrix a = build_alpha(f, order);
    for (auto& m : minors(a)) comps.push_back(std::move(m));
    return PolyMap(2 * n, std::move(comps));
}

PolyMap delta(const PolyMap& f) {
    const int n = f.domain_dim();
    std::vector<Poly> comps;
    std::vector<bool> all_primed(n, true), none(n, false);
    for (int i = 0; i < f.codomain_dim(); ++i)
        comps.push_back(lift_to_doubled(f.component(i), none) -
                        lift_to_doubled(f.component(i), all_primed));
    return PolyMap(2 * n, std::move(comps));
}

namespace {

std::string fresh_name(std::string base, const std::vector<std::string>& used) {
    while (std::find(used.begin(), used.end(), base) != used.end()) base += "'";
    return base;
}

// Rewrites a polynomial over (z..., y, u) symmetric in (y, u) as a polynomial
// over (z..., s, p) with s = y + u, p = y * u.
Poly symmetrize_pair(const Poly& q, const std::vector<std::string>& sv) {
    const int m = static_cast<int>(sv.size());
    const int yi = m - 2, ui = m - 1, si = m - 2, pi = m - 1;
    // power sums y^k + u^k expressed in (s, p)
    std::vector<Poly> psum{Poly::constant(sv, 2), Poly::variable(sv, si)};
    Poly out(sv);
    for (const auto& [e, c] : q.terms()) {
        int a = e[yi], b = e[ui];
        if (a < b) continue; // folded into its mirror term
        Exponents mirror = e;
        std::swap(mirror[yi], mirror[ui]);
        if (q.coeff(mirror) != c)
            throw PolyError("symmetrize_pair: polynomial is not symmetric");
        Exponents ze(m, 0);
        for (int i = 0; i < si; ++i) ze[i] = e[i];
        ze[pi] = b;
        Poly term = Poly::monomial(sv, ze, c);
        int k = a - b;
        if (k == 0) {
            out = out + term;
        } else {
            while (static_cast<int>(psum.size()) <= k)
                psum.push_back(psum[1] * psum.back() -
                               Poly::variable(sv, pi) * psum[psum.size() - 2]);
            out = out + term * psum[k];
        }
    }
    return out;
}

// Double point pairs of a normal-form germ f = (z, f~(z, y)): divided
// differences in (z, y, u), rewritten over the unordered-pair coordinates
// (z, s, p). Each geometric pair {(z,y),(z,u)} is counted once, matching the
// delta values computed symbolically for the worked families.
IdealGens unordered_double_point_ideal(const PolyMap& f) {
    const int n = f.domain_dim();
    const int p = f.codomain_dim();
    std::vector<std::string> rv = f.vars();
    rv.push_back(fresh_name("u", rv));
    const int yi = n - 1, ui = n;
    std::vector<int> keep(n), to_u(n);
    for (int i = 0; i < n; ++i) keep[i] = i;
    for (int i = 0; i + 1 < n; ++i) to_u[i] = i;
    to_u[n - 1] = ui;

    std::vector<std::string> sv(f.vars().begin(), f.vars().end() - 1);
    sv.push_back(fresh_name("s", sv));
    sv.push_back(fresh_name("p", sv));

    IdealGens gens;
    gens.nvars = n + 1;
    gens.vars = sv;
    for (int j = n - 1; j < p; ++j) {
        Poly at_y = f.component(j).with_vars(rv, keep);
        Poly at_u = f.component(j).with_vars(rv, to_u);
        Poly dd = (at_u - at_y).divide_by_linear(ui, yi);
        gens.generators.push_back(symmetrize_pair(dd, sv));
    }
    return gens;
}

} // namespace

IdealGens double_point_ideal(const PolyMap& f, Telescoping order) {
    if (in_corank1_normal_form(f)) return unordered_double_point_ideal(f);
    PolyMap dt = delta_tilde(f, order);
    IdealGens gens;
    gens.nvars = dt.domain_dim();
    gens.vars = dt.vars();
    gens.generators = dt.components();
    return gens;
}

int corank(const PolyMap& f) {
    const int n = f.domain_dim();
    const int p = f.codomain_dim();
    // Jacobian at 0 = matrix of linear coefficients.
    std::vector<std::vector<Rational>> m(p, std::vector<Rational>(n, 0));
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < n; ++j) {
            Exponents e(n, 0);
            e[j] = 1;
            m[i][j] = f.component(i).coeff(e);
        }
    }
    // exact Gaussian elimination
    int rank = 0;
    for (int col = 0; col < n && rank < p; ++col) {
        int pivot = -1;
        for (int r = rank; r < p; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = 0; r < p; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[rank][col];
            for (int c = col; c < n; ++c) m[r][c] -= factor * m[rank][c];
        }
        ++rank;
    }
    return n - rank;
}

bool in_corank1_normal_form(const PolyMap& f) {
    const int n = f.domain_dim();
    for (int i = 0; i < n - 1; ++i) {
        if (f.component(i) != Poly::variable(f.vars(), i)) return false;
    }
    return true;
}

PolyMap corank1_reduce(const PolyMap& f) {
    const int n = f.domain_dim();
    const int p = f.codomain_dim();
    if (!in_corank1_normal_form(f))
        throw NotInNormalForm(
            "corank1_reduce requires f = (z, f~(z,y)); normalization is not automatic");
    if (corank(f) != 1) throw NotInNormalForm("corank1_reduce requires corank 1");

    // Reduced variables (z_1..z_{n-1}, y, u); y keeps its original name.
    std::vector<std::string> rv(f.vars().begin(), f.vars().end());
    rv.push_back("u");
    const int yi = n - 1, ui = n;

    std::vector<int> keep_y(n), to_u(n);
    for (int i = 0; i < n; ++i) keep_y[i] = i;
    for (int i = 0; i < n - 1; ++i) to_u[i] = i;
    to_u[n - 1] = ui;

    std::vector<Poly> comps;
    for (int j = n - 1; j < p; ++j) {
        Poly at_y = f.component(j).with_vars(rv, keep_y);
        Poly at_u = f.component(j).with_vars(rv, to_u);
        comps.push_back((at_u - at_y).divide_by_linear(ui, yi));
    }
    return PolyMap(n + 1, std::move(comps));
}

PolyMap grad_norm_sq(const PolyMap& f) {
    const int n = f.domain_dim();
    std::vector<Poly> comps;
    for (int i = 0; i < n; ++i) {
        Poly acc(f.vars());
        for (int j = 0; j < f.codomain_dim(); ++j)
            acc = acc + f.component(j) * f.component(j).partial(i);
        comps.push_back(acc.scaled(2));
    }
    return PolyMap(n, std::move(comps));
}

} // namespace germforge
