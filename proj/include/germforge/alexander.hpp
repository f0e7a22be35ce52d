#pragma once

#include <string>
#include <utility>
#include <vector>

#include "germforge/knot.hpp"

namespace germforge {

// Integer Laurent polynomial in t, normalized so the lowest stored exponent
// is 0 and the leading coefficient is positive (Alexander polynomials are
// only defined up to +-t^k).
class LaurentPoly {
public:
    LaurentPoly() = default; // zero

    static LaurentPoly from_coeffs(std::vector<mpz_class> coeffs);
    static LaurentPoly one();

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator*(const LaurentPoly& o) const;

    mpz_class at_int(long t) const;
    // palindromic up to overall sign: Delta(t) == +-t^deg Delta(1/t)
    bool is_symmetric() const;

    std::string to_string() const;

private:
    std::vector<mpz_class> coeffs_;
};

// Alexander polynomial from the labeled diagram: one Wirtinger-derived row
// per crossing, delete one row and one column, exact integer determinant.
LaurentPoly alexander_polynomial(const KnotDiagram& d);

// |Delta(-1)|, the knot determinant.
mpz_class knot_determinant(const LaurentPoly& alex);

struct GroupPresentation {
    std::vector<std::string> generators;
    // words as (generator index, exponent) runs
    std::vector<std::vector<std::pair<int, int>>> relators;
};

std::string word_to_string(const GroupPresentation& g,
                           const std::vector<std::pair<int, int>>& word);

// One generator per arc, one conjugation relator per crossing minus the
// redundant one.
GroupPresentation wirtinger_presentation(const KnotDiagram& d);

} // namespace germforge
