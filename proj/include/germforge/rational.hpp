#pragma once

#include <gmpxx.h>
#include <string>

namespace germforge {

using Rational = mpq_class;
using Integer = mpz_class;

// Renders "num" or "num/den", matching the report schema.
inline std::string rational_to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline double rational_to_double(const Rational& q) { return q.get_d(); }

} // namespace germforge
