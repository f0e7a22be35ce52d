#pragma once

#include <vector>

#include "germforge/poly.hpp"

namespace germforge {

// Divided-difference matrix alpha with f(x') - f(x) = alpha(x,x') (x' - x).
// Entries live in 2n variables (x_1..x_n, x_1'..x_n'); on the diagonal
// x' = x the matrix restricts to the Jacobian Df(x).
struct AlphaMatrix {
    int rows = 0; // p
    int cols = 0; // n
    std::vector<Poly> entries; // row-major, each in 2n variables

    const Poly& at(int i, int j) const { return entries.at(i * cols + j); }
};

struct IdealGens {
    int nvars = 0;
    std::vector<std::string> vars;
    std::vector<Poly> generators;
};

struct NotInNormalForm : PolyError {
    using PolyError::PolyError;
};

// Variable list (x_1..x_n, x_1'..x_n') used for doubled-domain objects.
std::vector<std::string> doubled_vars(const std::vector<std::string>& vars);

// Lifts a polynomial in n variables into the doubled 2n-variable ring,
// with each variable optionally replaced by its primed copy.
Poly lift_to_doubled(const Poly& p, const std::vector<bool>& primed);

enum class Telescoping { LeftToRight, RightToLeft };

// Telescoping construction of alpha; division by (x_j' - x_j) is exact.
AlphaMatrix build_alpha(const PolyMap& f, Telescoping order = Telescoping::LeftToRight);

// All binomial(p,n) maximal minors, row subsets in lexicographic order.
std::vector<Poly> minors(const AlphaMatrix& a);

// DeltaTilde f = (f(x') - f(x), minors of alpha): p + binomial(p,n)
// components in 2n variables.
PolyMap delta_tilde(const PolyMap& f, Telescoping order = Telescoping::LeftToRight);

// Delta f(x,x') = f(x) - f(x').
PolyMap delta(const PolyMap& f);

// Generators of the double-point ideal feeding the delta invariant. For a
// germ in normal form f = (z, f~(z, y)) this is the ideal of unordered double
// point pairs: divided differences of f~ over (z, s, p) with s = y + y',
// p = y * y', so each geometric pair is counted once (this matches the
// symbolic delta values of the worked families). Otherwise it is I^2(f) in
// E_{2n}: target differences plus the n x n minors of alpha.
IdealGens double_point_ideal(const PolyMap& f, Telescoping order = Telescoping::LeftToRight);

// n - rank(Df(0)), exact.
int corank(const PolyMap& f);

// True when the first n-1 components are exactly the coordinate projections
// z_1..z_{n-1} (the corank-1 normal form accepted by corank1_reduce).
bool in_corank1_normal_form(const PolyMap& f);

// Divided differences (f_j(z,u) - f_j(z,y))/(u - y), j = n..p, as a map in
// the n+1 variables (z_1..z_{n-1}, y, u). Requires the normal form above.
PolyMap corank1_reduce(const PolyMap& f);

// Gradient of ||f||^2: component i = 2 sum_j f_j * df_j/dx_i.
PolyMap grad_norm_sq(const PolyMap& f);

} // namespace germforge
