#pragma once

#include <optional>

#include "germforge/lojestimate.hpp"

namespace germforge {

enum class RegularityClass { SmoothEmbedding, NotLipschitzEmbedding, Inconclusive };

struct RegularityVerdict {
    bool corank0 = false;
    ExponentEstimate double_point_estimate;
    RegularityClass classification = RegularityClass::Inconclusive;
};

struct DeterminacyReport {
    ExponentEstimate alpha_tilde; // L_0(DeltaTilde f)
    ExponentEstimate beta;        // L_0(Grad ||f||^2)
    int k = 2;
    bool rigorous = false;
};

struct IsolatedSingularityVerdict {
    bool isolated = false; // Yes / LikelyNo
    ExponentEstimate estimate;
    std::optional<Arc> witness; // arc in the zero set when LikelyNo
};

struct OutOfScope : PolyError {
    using PolyError::PolyError;
};

// Isolated singularity iff the isolated-singularity exponent is finite.
// Uses the corank-1 reduced system when f is in normal form, the full
// doubled system otherwise.
IsolatedSingularityVerdict is_isolated_singularity(const PolyMap& f, const EstimatorConfig& cfg);

// The system whose Lojasiewicz exponent is estimated for f (reduced or full).
PolyMap isolated_singularity_system(const PolyMap& f);

// Bracket [a] used by the determinacy bound: greatest integer <= a for the
// exact channel; conservative ceil(alpha + residual) when only a fit exists.
int determinacy_bracket_exact(const Rational& a);
int determinacy_bracket_fit(double alpha, double residual);

// C0-determinacy degree bound k >= max([L0(DeltaTilde f)]+2, [L0(Grad||f||^2)]+1);
// proved for (n,p) = (2,4) only.
DeterminacyReport c0_determinacy_degree(const PolyMap& f, const EstimatorConfig& cfg);

// True iff all components agree up to and including total degree k.
bool jet_agrees(const PolyMap& f, const PolyMap& g, int k);

// Smooth embedding iff corank 0 (exact channel); a corank > 0 injective germ
// with double-point exponent > 1 is not a Lipschitz embedding.
RegularityVerdict classify_regularity(const PolyMap& f, const EstimatorConfig& cfg);

} // namespace germforge
