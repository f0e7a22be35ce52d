#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace germforge {

// Objective over points in R^m (the caller bakes in the radius).
using SphereObjective = std::function<double(const std::vector<double>&)>;

struct SphereMinConfig {
    int starts = 16;          // low-discrepancy multistarts
    int max_iters = 6000;     // poll rounds per start
    double tol = 1e-12;       // step floor on the unit sphere
    double init_step = 0.5;
    std::uint64_t seed = 0;
};

struct SphereMinResult {
    double value = 0.0;
    std::vector<double> point;  // on the sphere of the requested radius
    int start_index = -1;
    bool converged = false;     // step floor reached within max_iters
};

// Derivative-free pattern search on the sphere ||x|| = radius, multistart.
// seed_dirs are extra unit directions appended after the low-discrepancy
// starts (used to seed from exact probe arcs). Each start runs an
// independent, deterministic descent; the reported minimum is therefore
// identical between the serial and OpenMP paths.
SphereMinResult minimize_on_sphere(const SphereObjective& objective, int dim, double radius,
                                   const SphereMinConfig& cfg,
                                   const std::vector<std::vector<double>>& seed_dirs,
                                   bool parallel);

SphereMinResult minimize_on_sphere_serial(const SphereObjective& objective, int dim,
                                          double radius, const SphereMinConfig& cfg,
                                          const std::vector<std::vector<double>>& seed_dirs);

// Deterministic low-discrepancy unit directions (generalized Fibonacci lattice
// mapped through a seeded rotation).
std::vector<std::vector<double>> low_discrepancy_directions(int dim, int count,
                                                            std::uint64_t seed);

} // namespace germforge
