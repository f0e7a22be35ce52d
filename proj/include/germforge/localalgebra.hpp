#pragma once

#include <utility>
#include <vector>

#include "germforge/doublepoint.hpp"
#include "germforge/poly.hpp"

namespace germforge {

// delta(f) = dim_R E_m / I, computed by exact degree-truncated linear
// algebra. Finite(d) carries the Nakayama certificate: once d_N = d_{N+1},
// the truncated dimensions have stabilized at the local quotient dimension.
struct DimResult {
    enum class Status { Finite, Unstabilized };
    Status status = Status::Unstabilized;
    int dim = 0;      // stabilized value, or lower bound when Unstabilized
    int n_max = 0;
    std::vector<std::pair<int, int>> trace; // (N, d_N)

    bool finite() const { return status == Status::Finite; }
};

// d_N = dim {deg < N} - rank {trunc(m*g, N)}, for N = 1..n_max, with exact
// rational rank. Stops at the first N with d_N = d_{N+1}.
DimResult quotient_dim(const IdealGens& ideal, int n_max = 14);

} // namespace germforge
