#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germforge/poly.hpp"

using namespace germforge;

namespace {
const std::vector<std::string> XY{"x", "y"};

Poly X() { return Poly::variable(XY, 0); }
Poly Y() { return Poly::variable(XY, 1); }
} // namespace

TEST_CASE("grlex order: degree first, then lex") {
    GrlexLess less;
    CHECK(less({1, 0}, {0, 2}));      // deg 1 < deg 2
    CHECK(less({0, 2}, {1, 1}));      // same degree, lex
    CHECK(less({1, 1}, {2, 0}));
    CHECK_FALSE(less({2, 0}, {2, 0}));
}

TEST_CASE("arithmetic") {
    Poly p = (X() + Y()) * (X() + Y());
    Poly expect = X() * X() + X() * Y().scaled(2) + Y() * Y();
    CHECK(p == expect);
    CHECK((p - p).is_zero());
    CHECK(p.pow(0) == Poly::constant(XY, 1));
    CHECK(p.pow(2) == p * p);
    CHECK((-p).scaled(-1) == p);
}

TEST_CASE("degree, valuation, truncate") {
    Poly p = X() * X() * X() + Y() * Y();
    CHECK(p.degree() == 3);
    CHECK(p.valuation() == 2);
    CHECK(p.truncate(3) == Y() * Y());
    CHECK(p.truncate(2).is_zero());
    CHECK_FALSE(Poly(XY).degree().has_value());
}

TEST_CASE("divide_by_linear is exact synthetic division") {
    std::vector<std::string> vars{"x", "xp"};
    Poly x = Poly::variable(vars, 0), xp = Poly::variable(vars, 1);
    CHECK((xp * xp - x * x).divide_by_linear(1, 0) == xp + x);
    CHECK((xp * xp * xp - x * x * x).divide_by_linear(1, 0) == xp * xp + xp * x + x * x);
    CHECK_THROWS_AS((x * x).divide_by_linear(1, 0), NonzeroRemainder);
}

TEST_CASE("substitute and drop_variable") {
    Poly p = X() * X() + Y();
    Poly q = p.substitute(1, X() * X()); // y -> x^2
    CHECK(q == X() * X() + X() * X());
    CHECK(q == X().pow(2).scaled(2));
    CHECK_FALSE(q.depends_on(1));
    Poly r = q.drop_variable(1);
    CHECK(r.nvars() == 1);
    CHECK(r.evaluate({3.0}) == doctest::Approx(18.0));
    CHECK_THROWS_AS(p.drop_variable(1), PolyError);
}

TEST_CASE("substitute_value and with_vars") {
    Poly p = X() * Y() + Y().pow(3);
    Poly q = p.substitute_value(1, Rational(2));
    CHECK(q == X().scaled(2) + Poly::constant(XY, 8));

    std::vector<std::string> yx{"y", "x"};
    Poly swapped = p.with_vars(yx, {1, 0});
    CHECK(swapped.vars() == yx);
    CHECK(swapped.evaluate({5.0, 2.0}) == doctest::Approx(p.evaluate({2.0, 5.0})));
}

TEST_CASE("exact and double evaluation agree on rationals") {
    Poly p = X().pow(3).scaled(Rational(1, 2)) - Y().scaled(Rational(2, 3));
    Rational exact = p.evaluate_exact({Rational(2), Rational(3)});
    CHECK(exact == Rational(2)); // 4 - 2
    CHECK(p.evaluate({2.0, 3.0}) == doctest::Approx(2.0));
}

TEST_CASE("arcs") {
    Arc a = Arc::monomial({-1, 1, -1}, {2, 1, 1}); // (-s^2, s, -s)
    CHECK(a.dim() == 3);
    CHECK(a.norm_valuation() == 1);
    auto p = a.at(0.5);
    CHECK(p[0] == doctest::Approx(-0.25));
    CHECK(p[1] == doctest::Approx(0.5));
    CHECK(p[2] == doctest::Approx(-0.5));

    std::vector<std::string> xyu{"x", "y", "u"};
    Poly g = Poly::variable(xyu, 1) + Poly::variable(xyu, 2); // y + u
    CHECK(substitute_arc(g, a).is_zero());
    Poly h = Poly::variable(xyu, 0).pow(2); // x^2
    CHECK(valuation(substitute_arc(h, a)) == 4);
}

TEST_CASE("PolyMap evaluation") {
    PolyMap f(2, {X(), Y() * Y(), Y().pow(3), X().pow(3) * Y()});
    auto v = f.evaluate({2.0, 1.0});
    CHECK(v == std::vector<double>{2.0, 1.0, 1.0, 8.0});
    CHECK(f.norm_at({0.0, 2.0}) == doctest::Approx(std::sqrt(16.0 + 64.0)));
}
