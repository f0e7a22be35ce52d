#include "germforge/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace germforge {

int total_degree(const Exponents& e) {
    int d = 0;
    for (int k : e) d += k;
    return d;
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(std::vector<std::string> vars, const Rational& c) {
    Poly p(std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
}

Poly Poly::variable(std::vector<std::string> vars, int index) {
    Poly p(std::move(vars));
    Exponents e(p.nvars(), 0);
    e.at(index) = 1;
    p.add_term(e, 1);
    return p;
}

Poly Poly::monomial(std::vector<std::string> vars, Exponents e, const Rational& c) {
    Poly p(std::move(vars));
    if (static_cast<int>(e.size()) != p.nvars())
        throw DimensionMismatch("monomial exponent vector has wrong length");
    p.add_term(e, c);
    return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars())
        throw DimensionMismatch("exponent vector length does not match variable count");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Poly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coeff(Exponents(nvars(), 0)); }

void Poly::check_same_vars(const Poly& o) const {
    if (vars_ != o.vars_)
        throw DimensionMismatch("polynomials over different variable lists");
}

Poly Poly::operator+(const Poly& o) const {
    check_same_vars(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    check_same_vars(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Rational& c) const {
    Poly r(vars_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_same_vars(o);
    Poly r(vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::pow(int k) const {
    Poly r = Poly::constant(vars_, 1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::optional<int> Poly::degree() const {
    if (terms_.empty()) return std::nullopt;
    return total_degree(terms_.rbegin()->first);
}

std::optional<int> Poly::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return total_degree(terms_.begin()->first);
}

double Poly::evaluate(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != nvars())
        throw DimensionMismatch("evaluation point has wrong dimension");
    // Per-variable power tables; exponents at desk scale are small.
    int maxdeg = 0;
    for (const auto& [e, c] : terms_)
        for (int k : e) maxdeg = std::max(maxdeg, k);
    std::vector<std::vector<double>> pw(point.size());
    for (size_t i = 0; i < point.size(); ++i) {
        pw[i].resize(maxdeg + 1);
        pw[i][0] = 1.0;
        for (int k = 1; k <= maxdeg; ++k) pw[i][k] = pw[i][k - 1] * point[i];
    }
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (size_t i = 0; i < e.size(); ++i) t *= pw[i][e[i]];
        acc += t;
    }
    return acc;
}

Rational Poly::evaluate_exact(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars())
        throw DimensionMismatch("evaluation point has wrong dimension");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

Poly Poly::partial(int var) const {
    if (var < 0 || var >= nvars()) throw DimensionMismatch("partial: bad variable index");
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.add_term(d, c * e[var]);
    }
    return r;
}

Poly Poly::divide_by_linear(int a, int b) const {
    if (a == b) throw DimensionMismatch("divide_by_linear: identical variables");
    // Synthetic division in x_a: with p = sum_k c_k(rest) x_a^k,
    //   q_k = c_{k+1} + x_b * q_{k+1},  remainder = p|_{x_a=x_b}.
    std::map<int, Poly> slices; // x_a degree -> coefficient poly (x_a exponent zeroed)
    int maxk = 0;
    for (const auto& [e, c] : terms_) {
        int k = e[a];
        maxk = std::max(maxk, k);
        Exponents rest = e;
        rest[a] = 0;
        auto it = slices.find(k);
        if (it == slices.end()) it = slices.emplace(k, Poly(vars_)).first;
        it->second.add_term(rest, c);
    }
    auto slice = [&](int k) -> Poly {
        auto it = slices.find(k);
        return it == slices.end() ? Poly(vars_) : it->second;
    };
    Poly xb = Poly::variable(vars_, b);
    Poly q(vars_);          // accumulated quotient
    Poly carry(vars_);      // q_{k+1}
    for (int k = maxk - 1; k >= 0; --k) {
        carry = slice(k + 1) + xb * carry;
        // reattach x_a^k
        for (const auto& [e, c] : carry.terms()) {
            Exponents f = e;
            f[a] += k;
            q.add_term(f, c);
        }
    }
    Poly rem = slice(0) + xb * carry;
    if (!rem.is_zero())
        throw NonzeroRemainder("divide_by_linear: polynomial does not vanish on x_a = x_b");
    return q;
}

Poly Poly::truncate(int N) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (total_degree(e) < N) r.terms_.emplace(e, c);
    }
    return r;
}

Poly Poly::substitute(int var, const Poly& value) const {
    check_same_vars(value);
    Poly r(vars_);
    std::vector<Poly> powers = {Poly::constant(vars_, 1)};
    for (const auto& [e, c] : terms_) {
        int k = e[var];
        while (static_cast<int>(powers.size()) <= k)
            powers.push_back(powers.back() * value);
        Exponents rest = e;
        rest[var] = 0;
        Poly term = powers[k].scaled(c);
        for (const auto& [f, d] : term.terms()) {
            Exponents g = f;
            for (size_t i = 0; i < g.size(); ++i) g[i] += rest[i];
            r.add_term(g, d);
        }
    }
    return r;
}

Poly Poly::substitute_value(int var, const Rational& c) const {
    Poly r(vars_);
    for (const auto& [e, v] : terms_) {
        Rational t = v;
        for (int k = 0; k < e[var]; ++k) t *= c;
        Exponents f = e;
        f[var] = 0;
        r.add_term(f, t);
    }
    return r;
}

bool Poly::depends_on(int var) const {
    for (const auto& [e, c] : terms_)
        if (e[var] != 0) return true;
    return false;
}

Poly Poly::drop_variable(int var) const {
    if (depends_on(var)) throw DimensionMismatch("drop_variable: variable still present");
    std::vector<std::string> nv;
    for (int i = 0; i < nvars(); ++i)
        if (i != var) nv.push_back(vars_[i]);
    Poly r(nv);
    for (const auto& [e, c] : terms_) {
        Exponents f;
        for (int i = 0; i < nvars(); ++i)
            if (i != var) f.push_back(e[i]);
        r.add_term(f, c);
    }
    return r;
}

Poly Poly::with_vars(std::vector<std::string> new_vars, const std::vector<int>& index_map) const {
    Poly r(std::move(new_vars));
    for (const auto& [e, c] : terms_) {
        Exponents f(r.nvars(), 0);
        for (int i = 0; i < nvars(); ++i) f.at(index_map.at(i)) = e[i];
        r.add_term(f, c);
    }
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest-degree terms first for readability
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool has_var = total_degree(e) > 0;
        bool coeff_one = (a == 1);
        if (!coeff_one || !has_var) os << rational_to_string(a);
        bool star = !coeff_one || !has_var;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (star) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            star = true;
        }
    }
    return os.str();
}

std::string univariate_var() { return "s"; }

Arc::Arc(std::vector<Poly> components) : components_(std::move(components)) {
    for (const auto& c : components_) {
        if (c.nvars() != 1)
            throw DimensionMismatch("arc components must be univariate");
        if (c.constant_term() != 0)
            throw PolyError("arc components must vanish at s=0");
    }
}

Arc Arc::monomial(const std::vector<int>& coeffs, const std::vector<int>& degs) {
    if (coeffs.size() != degs.size())
        throw DimensionMismatch("monomial arc: mismatched coeff/degree lists");
    std::vector<Poly> comps;
    std::vector<std::string> sv = {univariate_var()};
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) {
            comps.push_back(Poly(sv));
        } else {
            comps.push_back(Poly::monomial(sv, {degs[i]}, coeffs[i]));
        }
    }
    return Arc(std::move(comps));
}

std::optional<int> Arc::norm_valuation() const {
    std::optional<int> best;
    for (const auto& c : components_) {
        auto v = valuation(c);
        if (v && (!best || *v < *best)) best = v;
    }
    return best;
}

std::vector<double> Arc::at(double s) const {
    std::vector<double> r;
    for (const auto& c : components_) r.push_back(c.evaluate({s}));
    return r;
}

std::string Arc::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < components_.size(); ++i) {
        if (i) os << ", ";
        os << components_[i].to_string();
    }
    os << ")";
    return os.str();
}

Poly substitute_arc(const Poly& p, const Arc& arc) {
    if (arc.dim() != p.nvars())
        throw DimensionMismatch("substitute_arc: arc dimension mismatch");
    std::vector<std::string> sv = {univariate_var()};
    Poly r(sv);
    // power memo per variable
    std::vector<std::vector<Poly>> pw(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) pw[i].push_back(Poly::constant(sv, 1));
    for (const auto& [e, c] : p.terms()) {
        Poly term = Poly::constant(sv, c);
        for (int i = 0; i < p.nvars() && !term.is_zero(); ++i) {
            int k = e[i];
            if (k == 0) continue;
            while (static_cast<int>(pw[i].size()) <= k)
                pw[i].push_back(pw[i].back() * arc.components()[i]);
            term = term * pw[i][k];
        }
        r = r + term;
    }
    return r;
}

std::optional<int> valuation(const Poly& p) { return p.valuation(); }

PolyMap::PolyMap(int domain_dim, std::vector<Poly> components)
    : n_(domain_dim), components_(std::move(components)) {
    if (components_.empty()) throw DimensionMismatch("map with no components");
    for (const auto& c : components_) {
        if (c.nvars() != n_)
            throw DimensionMismatch("map component variable count != domain dimension");
        if (c.vars() != components_.front().vars())
            throw DimensionMismatch("map components over different variable lists");
    }
}

const std::vector<std::string>& PolyMap::vars() const {
    return components_.front().vars();
}

std::vector<double> PolyMap::evaluate(const std::vector<double>& point) const {
    std::vector<double> r;
    r.reserve(components_.size());
    for (const auto& c : components_) r.push_back(c.evaluate(point));
    return r;
}

double PolyMap::norm_at(const std::vector<double>& point) const {
    double acc = 0.0;
    for (const auto& c : components_) {
        double v = c.evaluate(point);
        acc += v * v;
    }
    return std::sqrt(acc);
}

} // namespace germforge
