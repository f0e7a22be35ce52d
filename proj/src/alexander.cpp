#include "germforge/alexander.hpp"

#include <algorithm>
#include <sstream>

namespace germforge {

namespace {

struct ArcData {
    int n = 0;                    // arcs == crossings
    std::vector<int> in_arc;      // per crossing
    std::vector<int> out_arc;
    std::vector<int> over_arc;
    std::vector<int> sign;
};

// Arcs are the strands between consecutive underpasses; arc k starts at the
// k-th under event in traversal order.
ArcData arcs_from_events(const std::vector<CrossingEvent>& ev) {
    ArcData a;
    const int m = static_cast<int>(ev.size());
    a.n = m / 2;
    std::vector<int> under_pos;
    under_pos.reserve(a.n);
    for (int k = 0; k < m; ++k)
        if (!ev[k].over) under_pos.push_back(k);

    auto containing_arc = [&](int pos) {
        // largest under position strictly below pos, cyclically
        int lo = 0, hi = static_cast<int>(under_pos.size());
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (under_pos[mid] < pos)
                lo = mid + 1;
            else
                hi = mid;
        }
        return (lo - 1 + a.n) % a.n;
    };

    a.in_arc.resize(a.n);
    a.out_arc.resize(a.n);
    a.over_arc.resize(a.n);
    a.sign.resize(a.n);
    for (int k = 0; k < m; ++k) {
        int c = ev[k].crossing;
        a.sign[c] = ev[k].sign;
        if (ev[k].over) {
            a.over_arc[c] = containing_arc(k);
        } else {
            int idx = static_cast<int>(std::lower_bound(under_pos.begin(), under_pos.end(), k) -
                                       under_pos.begin());
            a.out_arc[c] = idx;
            a.in_arc[c] = (idx - 1 + a.n) % a.n;
        }
    }
    return a;
}

Rational det_rational(std::vector<std::vector<Rational>> m) {
    const int n = static_cast<int>(m.size());
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

} // namespace

LaurentPoly LaurentPoly::from_coeffs(std::vector<mpz_class> coeffs) {
    std::size_t lo = 0;
    while (lo < coeffs.size() && coeffs[lo] == 0) ++lo;
    std::size_t hi = coeffs.size();
    while (hi > lo && coeffs[hi - 1] == 0) --hi;
    LaurentPoly p;
    p.coeffs_.assign(coeffs.begin() + lo, coeffs.begin() + hi);
    if (!p.coeffs_.empty() && p.coeffs_.back() < 0)
        for (auto& c : p.coeffs_) c = -c;
    return p;
}

LaurentPoly LaurentPoly::one() { return from_coeffs({mpz_class(1)}); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return LaurentPoly();
    std::vector<mpz_class> out(coeffs_.size() + o.coeffs_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    return from_coeffs(std::move(out));
}

mpz_class LaurentPoly::at_int(long t) const {
    mpz_class v = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * t + *it;
    return v;
}

bool LaurentPoly::is_symmetric() const {
    const std::size_t n = coeffs_.size();
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i] != coeffs_[n - 1 - i]) plus = false;
        if (coeffs_[i] != -coeffs_[n - 1 - i]) minus = false;
    }
    return plus || minus;
}

std::string LaurentPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int e = degree(); e >= 0; --e) {
        const mpz_class& c = coeffs_[e];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (a != 1 || e == 0) out << a.get_str();
        if (e >= 1) {
            if (a != 1) out << "*";
            out << "t";
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

LaurentPoly alexander_polynomial(const KnotDiagram& d) {
    const int n = d.crossing_count;
    if (n <= 1) return LaurentPoly::one();
    ArcData a = arcs_from_events(d.events);

    // rows as degree-1 entries c0 + c1*t
    std::vector<std::vector<std::pair<long, long>>> rows(
        n, std::vector<std::pair<long, long>>(n, {0, 0}));
    for (int c = 0; c < n; ++c) {
        auto add = [&](int arc, long c0, long c1) {
            rows[c][arc].first += c0;
            rows[c][arc].second += c1;
        };
        if (a.sign[c] > 0) {
            // t*in + (1-t)*over - out
            add(a.in_arc[c], 0, 1);
            add(a.over_arc[c], 1, -1);
            add(a.out_arc[c], -1, 0);
        } else {
            // in + (t-1)*over - t*out
            add(a.in_arc[c], 1, 0);
            add(a.over_arc[c], -1, 1);
            add(a.out_arc[c], 0, -1);
        }
    }

    // delete the last row and column; determinant by evaluation at n points
    // and exact Lagrange interpolation (degree <= n-1)
    const int k = n - 1;
    std::vector<long> ts(n);
    std::vector<Rational> vals(n);
    for (int i = 0; i < n; ++i) {
        ts[i] = 2 + i;
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                m[r][c] = Rational(rows[r][c].first) + Rational(rows[r][c].second) * ts[i];
        vals[i] = det_rational(std::move(m));
    }

    std::vector<Rational> acc(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> basis{1};
        Rational denom = 1;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            basis.push_back(0);
            for (int e = static_cast<int>(basis.size()) - 1; e >= 1; --e)
                basis[e] = basis[e - 1] - Rational(ts[j]) * basis[e];
            basis[0] = -Rational(ts[j]) * basis[0];
            denom *= Rational(ts[i] - ts[j]);
        }
        Rational w = vals[i] / denom;
        for (std::size_t e = 0; e < basis.size(); ++e) acc[e] += w * basis[e];
    }

    std::vector<mpz_class> coeffs(n);
    for (int e = 0; e < n; ++e) {
        Rational c = acc[e];
        c.canonicalize();
        if (c.get_den() != 1)
            throw PolyError("alexander interpolation produced a non-integer coefficient");
        coeffs[e] = c.get_num();
    }
    return LaurentPoly::from_coeffs(std::move(coeffs));
}

mpz_class knot_determinant(const LaurentPoly& alex) { return abs(alex.at_int(-1)); }

std::string word_to_string(const GroupPresentation& g,
                           const std::vector<std::pair<int, int>>& word) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [gen, exp] : word) {
        if (exp == 0) continue;
        if (!first) out << " ";
        first = false;
        out << g.generators.at(gen);
        if (exp != 1) out << "^" << exp;
    }
    return first ? "1" : out.str();
}

GroupPresentation wirtinger_presentation(const KnotDiagram& d) {
    GroupPresentation g;
    const int n = d.crossing_count;
    if (n == 0) {
        g.generators = {"g1"};
        return g;
    }
    ArcData a = arcs_from_events(d.events);
    for (int i = 0; i < n; ++i) g.generators.push_back("g" + std::to_string(i + 1));
    for (int c = 0; c < n - 1; ++c) { // drop the redundant last relator
        int o = a.over_arc[c], i = a.in_arc[c], u = a.out_arc[c];
        if (a.sign[c] > 0)
            g.relators.push_back({{o, 1}, {i, 1}, {o, -1}, {u, -1}});
        else
            g.relators.push_back({{o, -1}, {i, 1}, {o, 1}, {u, -1}});
    }
    return g;
}

} // namespace germforge
