#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "germforge/rational.hpp"

namespace germforge {

using Exponents = std::vector<int>;

// Graded lexicographic order on exponent vectors: total degree first,
// then lex. Jet truncation is a prefix operation under this order.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

struct PolyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonzeroRemainder : PolyError {
    using PolyError::PolyError;
};
struct DimensionMismatch : PolyError {
    using PolyError::PolyError;
};

class Arc;

// Multivariate polynomial with exact rational coefficients.
// Invariant: no stored term has a zero coefficient; every exponent
// vector has length nvars(). Immutable after construction.
class Poly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(std::vector<std::string> vars, const Rational& c);
    static Poly variable(std::vector<std::string> vars, int index);
    static Poly monomial(std::vector<std::string> vars, Exponents e, const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Exponents& e) const;
    Rational constant_term() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const Rational& c) const;
    Poly pow(int k) const;

    // Highest / lowest total degree of a stored term; nullopt for zero.
    std::optional<int> degree() const;
    std::optional<int> valuation() const;

    double evaluate(const std::vector<double>& point) const;
    Rational evaluate_exact(const std::vector<Rational>& point) const;

    Poly partial(int var) const;

    // Exact division by (x_a - x_b). Throws NonzeroRemainder unless the
    // polynomial vanishes identically on x_a = x_b.
    Poly divide_by_linear(int a, int b) const;

    // Drops all terms of total degree >= N.
    Poly truncate(int N) const;

    // Substitutes a polynomial (over the same variable list) for one variable.
    Poly substitute(int var, const Poly& value) const;
    // Substitutes a rational constant for one variable (variable list unchanged).
    Poly substitute_value(int var, const Rational& c) const;

    // Requires the variable to be absent from every term.
    Poly drop_variable(int var) const;

    // Re-expresses the polynomial over a new variable list; index_map[i] is
    // the position of old variable i in the new list.
    Poly with_vars(std::vector<std::string> new_vars, const std::vector<int>& index_map) const;

    bool depends_on(int var) const;

    std::string to_string() const;

    void add_term(const Exponents& e, const Rational& c); // construction helper

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void check_same_vars(const Poly& o) const;
};

// Composes p with one univariate arc component per variable; the result is
// a polynomial in the single variable "s".
Poly substitute_arc(const Poly& p, const Arc& arc);

// Lowest exponent with nonzero coefficient; nullopt encodes +infinity.
std::optional<int> valuation(const Poly& p);

// A real analytic test curve s -> (a_1(s),...,a_m(s)) with a(0) = 0.
class Arc {
public:
    Arc() = default;
    explicit Arc(std::vector<Poly> components);

    // Monomial arc: component i is coeff[i] * s^deg[i] (zero when coeff[i]==0).
    static Arc monomial(const std::vector<int>& coeffs, const std::vector<int>& degs);

    const std::vector<Poly>& components() const { return components_; }
    int dim() const { return static_cast<int>(components_.size()); }

    // Min valuation over nonzero components; nullopt if all components vanish.
    std::optional<int> norm_valuation() const;

    std::vector<double> at(double s) const;
    std::string to_string() const;

private:
    std::vector<Poly> components_;
};

// A polynomial map germ f:(R^n,0) -> (R^p,0).
class PolyMap {
public:
    PolyMap() = default;
    PolyMap(int domain_dim, std::vector<Poly> components);

    int domain_dim() const { return n_; }
    int codomain_dim() const { return static_cast<int>(components_.size()); }
    const std::vector<Poly>& components() const { return components_; }
    const Poly& component(int i) const { return components_.at(i); }
    const std::vector<std::string>& vars() const;

    std::vector<double> evaluate(const std::vector<double>& point) const;
    // Euclidean norm of f at a point.
    double norm_at(const std::vector<double>& point) const;

    bool operator==(const PolyMap& o) const {
        return n_ == o.n_ && components_ == o.components_;
    }

private:
    int n_ = 0;
    std::vector<Poly> components_;
};

std::string univariate_var();

} // namespace germforge
