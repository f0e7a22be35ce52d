#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germforge/doublepoint.hpp"
#include "germforge/parse.hpp"

using namespace germforge;

namespace {

PolyMap fam_a(const Rational& t) {
    return parse_map_fixed("f(x,y) = (x, y^2, y^3, x^3*y + t*x^2*y)", t);
}

} // namespace

TEST_CASE("alpha satisfies the divided-difference identity") {
    PolyMap f = fam_a(1);
    for (Telescoping order : {Telescoping::LeftToRight, Telescoping::RightToLeft}) {
        AlphaMatrix a = build_alpha(f, order);
        REQUIRE(a.rows == 4);
        REQUIRE(a.cols == 2);
        std::vector<std::string> dv = doubled_vars(f.vars());
        for (int i = 0; i < 4; ++i) {
            Poly diff = lift_to_doubled(f.component(i), {true, true}) -
                        lift_to_doubled(f.component(i), {false, false});
            Poly sum(dv);
            for (int j = 0; j < 2; ++j) {
                Poly dx = Poly::variable(dv, 2 + j) - Poly::variable(dv, j);
                sum = sum + a.at(i, j) * dx;
            }
            CHECK(diff == sum);
        }
    }
}

TEST_CASE("alpha restricts to the Jacobian on the diagonal") {
    PolyMap f = fam_a(0);
    AlphaMatrix a = build_alpha(f);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) {
            Poly e = a.at(i, j);
            // substitute x' = x, y' = y
            for (int k = 0; k < 2; ++k)
                e = e.substitute(2 + k, Poly::variable(e.vars(), k));
            Poly expect = lift_to_doubled(f.component(i).partial(j), {false, false});
            CHECK(e == expect);
        }
    }
}

TEST_CASE("delta_tilde has p + C(p,n) components in 2n variables") {
    PolyMap f = fam_a(1);
    PolyMap dt = delta_tilde(f);
    CHECK(dt.domain_dim() == 4);
    CHECK(dt.codomain_dim() == 4 + 6);
    PolyMap d = delta(f);
    CHECK(d.codomain_dim() == 4);
    // delta = f(x) - f(x')
    CHECK(d.component(0) ==
          Poly::variable(d.vars(), 0) - Poly::variable(d.vars(), 2));
}

TEST_CASE("corank is exact") {
    CHECK(corank(parse_map_fixed("f(x,y) = (x, y, 0, 0)")) == 0);
    CHECK(corank(parse_map_fixed("f(x,y) = (x, y, x^2, x*y)")) == 0);
    CHECK(corank(fam_a(0)) == 1);
    CHECK(corank(parse_map_fixed("f(x,y) = (x^2-y^2, 2*x*y, x^3-3*x*y^2, 3*x^2*y-y^3)")) == 2);
    CHECK(corank(parse_map_fixed("f(x,y) = (2*x+y, 4*x+2*y, 0, 0)")) == 1);
}

TEST_CASE("corank-1 reduction matches the worked family") {
    // DeltaTilde^1 f_t = (u+y, u^2+uy+y^2, x^3+tx^2) in (x, y, u)
    for (int t : {0, 1}) {
        PolyMap f = fam_a(t);
        REQUIRE(in_corank1_normal_form(f));
        PolyMap red = corank1_reduce(f);
        REQUIRE(red.domain_dim() == 3);
        REQUIRE(red.codomain_dim() == 3);
        std::vector<std::string> v = red.vars();
        CHECK(v == std::vector<std::string>{"x", "y", "u"});
        Poly y = Poly::variable(v, 1), u = Poly::variable(v, 2), x = Poly::variable(v, 0);
        CHECK(red.component(0) == u + y);
        CHECK(red.component(1) == u * u + u * y + y * y);
        CHECK(red.component(2) == x.pow(3) + x.pow(2).scaled(t));
    }
}

TEST_CASE("corank1_reduce rejects maps outside the normal form") {
    CHECK_THROWS_AS(corank1_reduce(parse_map_fixed("f(x,y) = (x+y, y^2, y^3, 0)")),
                    NotInNormalForm);
    CHECK_THROWS_AS(corank1_reduce(parse_map_fixed("f(x,y) = (x, y, 0, 0)")), NotInNormalForm);
}

TEST_CASE("grad_norm_sq") {
    PolyMap f = parse_map_fixed("f(x,y) = (x, y, 0, 0)");
    PolyMap g = grad_norm_sq(f);
    CHECK(g.component(0) == Poly::variable(f.vars(), 0).scaled(2));
    CHECK(g.component(1) == Poly::variable(f.vars(), 1).scaled(2));

    // gradient of ||(x, y^2)||^2 = (2x, 4y^3)
    PolyMap h = grad_norm_sq(parse_map_fixed("f(x,y) = (x, y^2)"));
    CHECK(h.component(0) == Poly::variable(h.vars(), 0).scaled(2));
    CHECK(h.component(1) == Poly::variable(h.vars(), 1).pow(3).scaled(4));
}

TEST_CASE("double_point_ideal: unordered pair coordinates for normal forms") {
    IdealGens gens = double_point_ideal(fam_a(0));
    REQUIRE(gens.nvars == 3);
    CHECK(gens.vars == std::vector<std::string>{"x", "s", "p"});
    REQUIRE(gens.generators.size() == 3);
    // divided differences of (y^2, y^3, x^3 y) in (s, p) coordinates
    Poly x = Poly::variable(gens.vars, 0);
    Poly s = Poly::variable(gens.vars, 1);
    Poly p = Poly::variable(gens.vars, 2);
    CHECK(gens.generators[0] == s);
    CHECK(gens.generators[1] == s * s - p);
    CHECK(gens.generators[2] == x.pow(3));
}

TEST_CASE("double_point_ideal: doubled variables outside the normal form") {
    IdealGens gens =
        double_point_ideal(parse_map_fixed("f(x,y) = (x^2-y^2, 2*x*y, x^3-3*x*y^2, 3*x^2*y-y^3)"));
    CHECK(gens.nvars == 4);
    CHECK(gens.vars == std::vector<std::string>{"x", "y", "x'", "y'"});
    CHECK(gens.generators.size() == 10);
}
