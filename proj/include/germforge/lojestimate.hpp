#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "germforge/doublepoint.hpp"
#include "germforge/poly.hpp"
#include "germforge/spheremin.hpp"

namespace germforge {

struct EstimatorConfig {
    double r0 = 0.5;
    double rho = 0.7;
    int K = 12;
    int starts = 16;
    std::uint64_t seed = 0;
    int max_iters = 6000;
    double tol = 1e-12;

    void validate() const;
    SphereMinConfig sphere_config() const;
};

enum class ExponentVerdict { FiniteEstimated, LikelyInfinite, Withheld };

// Slope beyond which the numeric channel reports LikelyInfinite.
inline constexpr double kAlphaMax = 16.0;
// Fit may undershoot a rigorous arc bound by at most this much.
inline constexpr double kConsistencySlack = 0.25;

struct ExponentEstimate {
    double fitted_alpha = 0.0;        // +inf when LikelyInfinite via arcs
    double fit_residual = 0.0;        // max abs log-log deviation
    double intercept = 0.0;           // exponentiated fit intercept; indicative only
    std::optional<Rational> arc_lower_bound;
    std::optional<Arc> witness_arc;   // best arc, or a zero-set witness when infinite
    std::vector<std::pair<double, double>> radii_trace; // (r, min ||g|| at r), r decreasing
    ExponentVerdict verdict = ExponentVerdict::FiniteEstimated;
    bool consistency_warning = false; // fit fell below arc bound - slack
    bool floor_clamped = false;       // double-point estimate raised to 1
    std::vector<int> diverged_radii;  // radius indices excluded from the fit
};

struct DegeneratePair : PolyError {
    using PolyError::PolyError;
};
struct OptimizerDivergence : PolyError {
    using PolyError::PolyError;
};

// Exact arc valuation ratio: min component valuation of g along the arc,
// divided by the arc's norm valuation. nullopt encodes +infinity (the arc
// lies in the zero set of g). Always a rigorous lower bound for L_0(g).
std::optional<Rational> arc_exponent(const PolyMap& g, const Arc& arc);

// Coordinate axes, +-1 diagonals and monomial arcs x_i = c s^d with
// c in {-1,0,1}; mirrors the hand-chosen curves of the worked examples.
std::vector<Arc> automatic_arc_pool(int nvars, int max_degree = 0);

// Lojasiewicz exponent estimate for ||g(x)|| >= C ||x||^alpha near 0.
ExponentEstimate estimate_exponent_at_zero(const PolyMap& g, const EstimatorConfig& cfg,
                                           const std::vector<Arc>& probe_arcs = {});

// Double point exponent ||f(x)-f(x')|| >= C ||x-x'||^alpha for injective f.
ExponentEstimate estimate_double_point_exponent(const PolyMap& f, const EstimatorConfig& cfg,
                                                const std::vector<std::pair<Arc, Arc>>& probe_pairs = {});

// Exponent of the minor system restricted to the diagonal x' = x; feeds an
// independent lower-bound channel for the isolated-singularity exponent.
ExponentEstimate diagonal_probe(const PolyMap& f, const EstimatorConfig& cfg);

// Minor system on the diagonal as a map in the source variables.
PolyMap diagonal_minor_system(const PolyMap& f);

// Least-squares line through (log x, log y); returns slope, intercept,
// max abs residual.
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    bool ok = false;
};
LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points);

} // namespace germforge
