#include "germforge/regularity.hpp"

#include <algorithm>
#include <cmath>

namespace germforge {

namespace {

struct Bracket {
    int value = 0;
    bool exact = false;
};

// Prefer the exact arc bound when the fit confirms it; otherwise fall back
// to the conservative fit bracket.
Bracket bracket_of(const ExponentEstimate& e) {
    if (e.verdict == ExponentVerdict::FiniteEstimated && e.arc_lower_bound &&
        std::abs(e.fitted_alpha - e.arc_lower_bound->get_d()) <= kConsistencySlack) {
        return Bracket{determinacy_bracket_exact(*e.arc_lower_bound), true};
    }
    return Bracket{determinacy_bracket_fit(e.fitted_alpha, e.fit_residual), false};
}

} // namespace

PolyMap isolated_singularity_system(const PolyMap& f) {
    if (in_corank1_normal_form(f) && corank(f) == 1) return corank1_reduce(f);
    return delta_tilde(f);
}

IsolatedSingularityVerdict is_isolated_singularity(const PolyMap& f, const EstimatorConfig& cfg) {
    IsolatedSingularityVerdict v;
    v.estimate = estimate_exponent_at_zero(isolated_singularity_system(f), cfg);
    v.isolated = v.estimate.verdict == ExponentVerdict::FiniteEstimated;
    if (v.estimate.verdict == ExponentVerdict::LikelyInfinite) v.witness = v.estimate.witness_arc;
    return v;
}

int determinacy_bracket_exact(const Rational& a) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return static_cast<int>(q.get_si());
}

int determinacy_bracket_fit(double alpha, double residual) {
    return static_cast<int>(std::ceil(alpha + residual));
}

DeterminacyReport c0_determinacy_degree(const PolyMap& f, const EstimatorConfig& cfg) {
    if (f.domain_dim() != 2 || f.codomain_dim() != 4)
        throw OutOfScope("determinacy bound is proved for (n,p) = (2,4) only");

    DeterminacyReport rep;
    rep.alpha_tilde = estimate_exponent_at_zero(isolated_singularity_system(f), cfg);
    if (rep.alpha_tilde.verdict == ExponentVerdict::LikelyInfinite)
        throw OutOfScope("determinacy bound requires an isolated singularity");
    rep.beta = estimate_exponent_at_zero(grad_norm_sq(f), cfg);

    Bracket a = bracket_of(rep.alpha_tilde);
    Bracket b = bracket_of(rep.beta);
    // immersive germs put a unit in the minor ideal (exponent 0); the bound
    // still needs degree >= 3 there, so brackets are clamped below at 1
    int first = std::max(a.value, 1) + 2;
    int second = std::max(b.value, 1) + 1;
    rep.k = std::max({first, second, 2});
    rep.rigorous = a.exact && b.exact;
    return rep;
}

bool jet_agrees(const PolyMap& f, const PolyMap& g, int k) {
    if (f.domain_dim() != g.domain_dim() || f.codomain_dim() != g.codomain_dim())
        throw DimensionMismatch("jet comparison needs matching (n,p)");
    std::vector<int> identity(f.domain_dim());
    for (int i = 0; i < f.domain_dim(); ++i) identity[i] = i;
    for (int i = 0; i < f.codomain_dim(); ++i) {
        Poly gi = g.component(i);
        if (gi.vars() != f.vars()) gi = gi.with_vars(f.vars(), identity);
        if (!(f.component(i) - gi).truncate(k + 1).is_zero()) return false;
    }
    return true;
}

RegularityVerdict classify_regularity(const PolyMap& f, const EstimatorConfig& cfg) {
    RegularityVerdict v;
    v.corank0 = corank(f) == 0;
    v.double_point_estimate = estimate_double_point_exponent(f, cfg);
    if (v.corank0) {
        v.classification = RegularityClass::SmoothEmbedding;
    } else if (v.double_point_estimate.verdict == ExponentVerdict::FiniteEstimated &&
               v.double_point_estimate.fitted_alpha >
                   1.0 + v.double_point_estimate.fit_residual) {
        v.classification = RegularityClass::NotLipschitzEmbedding;
    } else {
        v.classification = RegularityClass::Inconclusive;
    }
    return v;
}

} // namespace germforge
