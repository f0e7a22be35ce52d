#pragma once

#include <array>
#include <vector>

#include "germforge/lojestimate.hpp"

namespace germforge {

struct TracingStalled : PolyError {
    using PolyError::PolyError;
};

// ||f||^2 as an exact polynomial in the source variables.
Poly norm_sq_poly(const PolyMap& f);

struct MilnorProbeResult {
    bool probable = false;
    double min_grad_norm = 0.0;
    std::vector<double> failure_point; // near-critical sample when not probable
};

// Heuristic check that epsilon is a Milnor-Fukuda radius: samples the annulus
// eta <= ||f||^2 <= epsilon^2 on a polar grid over descending level bands and
// requires ||Grad ||f||^2|| to stay above a threshold. Requires n = 2.
MilnorProbeResult milnor_radius_probe(const PolyMap& f, double epsilon,
                                      const EstimatorConfig& cfg);

// Predictor-corrector continuation on ||f||^2 = epsilon^2 starting from a
// ray-bisection seed; returns a closed polyline (last point != first).
// Throws TracingStalled when Newton correction keeps failing at the minimum
// step epsilon/5000.
std::vector<std::array<double, 2>> trace_fiber(const PolyMap& f, double epsilon,
                                               const EstimatorConfig& cfg);

// Sum of signed angle increments around the origin, divided by 2*pi.
double winding_number(const std::vector<std::array<double, 2>>& loop);

} // namespace germforge
