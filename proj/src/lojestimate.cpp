#include "germforge/lojestimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace germforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Smallest s > 0 with ||arc(s)|| = r (arcs here are monotone near 0).
std::optional<double> arc_parameter_for_radius(const Arc& arc, double r) {
    auto norm_at = [&](double s) { return vec_norm(arc.at(s)); };
    double hi = 1.0;
    int guard = 0;
    while (norm_at(hi) < r && guard++ < 60) hi *= 2.0;
    if (norm_at(hi) < r) return std::nullopt;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (norm_at(mid) < r) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<std::vector<double>> arc_seed_directions(
    const std::vector<std::pair<Rational, const Arc*>>& ranked, double r, size_t max_seeds) {
    std::vector<std::vector<double>> dirs;
    for (const auto& [ratio, arc] : ranked) {
        if (dirs.size() >= max_seeds) break;
        auto s = arc_parameter_for_radius(*arc, r);
        if (!s) continue;
        std::vector<double> p = arc->at(*s);
        double n = vec_norm(p);
        if (n == 0) continue;
        for (double& x : p) x /= n;
        dirs.push_back(std::move(p));
    }
    return dirs;
}

// Near the double-precision noise floor ||g|| stops decaying and the smallest
// radii drift above the trend line; drop such points until the fit is clean.
LogLogFit fit_with_noise_trim(std::vector<std::pair<double, double>>& pts) {
    LogLogFit fit = fit_loglog(pts);
    while (fit.ok && fit.residual > 0.08 && pts.size() > 4) {
        size_t worst = 0;
        for (size_t i = 1; i < pts.size(); ++i)
            if (pts[i].first < pts[worst].first) worst = i;
        double pred = fit.slope * std::log(pts[worst].first) + fit.intercept;
        if (std::log(pts[worst].second) <= pred) break; // honest fast decay, keep
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(worst));
        fit = fit_loglog(pts);
    }
    return fit;
}

} // namespace

void EstimatorConfig::validate() const {
    if (!(rho > 0.0 && rho < 1.0)) throw PolyError("EstimatorConfig: rho must be in (0,1)");
    if (K < 4) throw PolyError("EstimatorConfig: K must be >= 4");
    if (starts < 8) throw PolyError("EstimatorConfig: starts must be >= 8");
    if (!(r0 > 0.0 && r0 <= 1.0)) throw PolyError("EstimatorConfig: r0 must be in (0,1]");
}

SphereMinConfig EstimatorConfig::sphere_config() const {
    SphereMinConfig sc;
    sc.starts = starts;
    sc.max_iters = max_iters;
    sc.tol = tol;
    sc.seed = seed;
    return sc;
}

std::optional<Rational> arc_exponent(const PolyMap& g, const Arc& arc) {
    if (arc.dim() != g.domain_dim())
        throw DimensionMismatch("arc_exponent: arc dimension mismatch");
    auto arc_val = arc.norm_valuation();
    if (!arc_val) throw PolyError("arc_exponent: arc is identically zero");

    std::optional<int> gval;
    for (const auto& comp : g.components()) {
        auto v = valuation(substitute_arc(comp, arc));
        if (v && (!gval || *v < *gval)) gval = v;
    }
    if (!gval) return std::nullopt; // arc lies in the zero set of g
    return Rational(*gval, *arc_val);
}

std::vector<Arc> automatic_arc_pool(int nvars, int max_degree) {
    if (max_degree <= 0) max_degree = nvars <= 3 ? 6 : 4;
    // Per-variable choices: 0, or +-s^d for d = 1..max_degree.
    const int options = 1 + 2 * max_degree;
    std::vector<Arc> pool;
    std::vector<int> choice(nvars, 0);
    while (true) {
        bool nonzero = false;
        std::vector<int> coeffs(nvars, 0), degs(nvars, 1);
        for (int i = 0; i < nvars; ++i) {
            int c = choice[i];
            if (c == 0) continue;
            nonzero = true;
            int d = (c - 1) / 2 + 1;
            coeffs[i] = (c % 2 == 1) ? 1 : -1;
            degs[i] = d;
        }
        if (nonzero) pool.push_back(Arc::monomial(coeffs, degs));
        int i = 0;
        for (; i < nvars; ++i) {
            if (++choice[i] < options) break;
            choice[i] = 0;
        }
        if (i == nvars) break;
    }
    return pool;
}

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
    LogLogFit fit;
    if (points.size() < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    std::vector<std::pair<double, double>> logs;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0)) return fit;
        logs.emplace_back(std::log(x), std::log(y));
        sx += logs.back().first;
        sy += logs.back().second;
        sxx += logs.back().first * logs.back().first;
        sxy += logs.back().first * logs.back().second;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [lx, ly] : logs)
        fit.residual = std::max(fit.residual, std::abs(ly - (fit.slope * lx + fit.intercept)));
    fit.ok = true;
    return fit;
}

ExponentEstimate estimate_exponent_at_zero(const PolyMap& g, const EstimatorConfig& cfg,
                                           const std::vector<Arc>& probe_arcs) {
    cfg.validate();
    ExponentEstimate est;

    // Exact channel: automatic pool plus caller probes.
    std::vector<Arc> pool = automatic_arc_pool(g.domain_dim());
    pool.insert(pool.end(), probe_arcs.begin(), probe_arcs.end());

    std::vector<std::pair<Rational, const Arc*>> ranked;
    for (const auto& arc : pool) {
        auto ratio = arc_exponent(g, arc);
        if (!ratio) {
            est.verdict = ExponentVerdict::LikelyInfinite;
            est.fitted_alpha = kInf;
            est.witness_arc = arc;
            return est;
        }
        if (!est.arc_lower_bound || *ratio > *est.arc_lower_bound) {
            est.arc_lower_bound = *ratio;
            est.witness_arc = arc;
        }
        ranked.emplace_back(*ratio, &arc);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    // Numeric channel: multistart sphere minima across a radius ladder.
    SphereObjective objective = [&](const std::vector<double>& p) { return g.norm_at(p); };
    SphereMinConfig sc = cfg.sphere_config();
    std::vector<std::pair<double, double>> fit_points;
    for (int k = 0; k < cfg.K; ++k) {
        double r = cfg.r0 * std::pow(cfg.rho, k);
        auto seeds = arc_seed_directions(ranked, r, 4);
        SphereMinResult mr =
            minimize_on_sphere(objective, g.domain_dim(), r, sc, seeds, true);
        est.radii_trace.emplace_back(r, mr.value);
        if (!mr.converged) {
            est.diverged_radii.push_back(k);
            continue;
        }
        if (mr.value > 0.0) fit_points.emplace_back(r, mr.value);
    }
    if (static_cast<int>(fit_points.size()) < 4) {
        // fall back to every recorded radius
        fit_points.clear();
        for (const auto& [r, v] : est.radii_trace)
            if (v > 0.0) fit_points.emplace_back(r, v);
        est.diverged_radii.clear();
    }

    LogLogFit fit = fit_with_noise_trim(fit_points);
    if (!fit.ok) {
        est.verdict = ExponentVerdict::LikelyInfinite;
        est.fitted_alpha = kInf;
        return est;
    }
    est.fitted_alpha = fit.slope;
    est.fit_residual = fit.residual;
    est.intercept = std::exp(fit.intercept);

    if (fit.slope > kAlphaMax) {
        est.verdict = ExponentVerdict::LikelyInfinite;
        return est;
    }
    if (est.arc_lower_bound &&
        est.fitted_alpha < rational_to_double(*est.arc_lower_bound) - kConsistencySlack) {
        est.verdict = ExponentVerdict::Withheld;
        est.consistency_warning = true;
        return est;
    }
    est.verdict = ExponentVerdict::FiniteEstimated;
    return est;
}

namespace {

Arc joined_arc(const Arc& a, const Arc& b) {
    std::vector<Poly> comps = a.components();
    for (const auto& c : b.components()) comps.push_back(c);
    return Arc(std::move(comps));
}

std::optional<int> pair_difference_valuation(const Arc& a, const Arc& b) {
    std::optional<int> best;
    for (int i = 0; i < a.dim(); ++i) {
        auto v = valuation(a.components()[i] - b.components()[i]);
        if (v && (!best || *v < *best)) best = v;
    }
    return best;
}

} // namespace

ExponentEstimate estimate_double_point_exponent(
    const PolyMap& f, const EstimatorConfig& cfg,
    const std::vector<std::pair<Arc, Arc>>& probe_pairs) {
    cfg.validate();
    const int n = f.domain_dim();
    ExponentEstimate est;
    PolyMap df = delta(f);

    // Exact channel: caller pairs plus automatic sign-flip pairs.
    std::vector<std::pair<Arc, Arc>> pairs;
    for (const auto& [a, b] : probe_pairs) {
        if (!pair_difference_valuation(a, b))
            throw DegeneratePair("probe pair with arc == arc'");
        pairs.emplace_back(a, b);
    }
    std::vector<Arc> pool = automatic_arc_pool(n);
    for (const auto& a : pool) {
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<Poly> flipped;
            for (int i = 0; i < n; ++i) {
                const Poly& c = a.components()[i];
                flipped.push_back((mask >> i) & 1 ? -c : c);
            }
            Arc b(std::move(flipped));
            if (!pair_difference_valuation(a, b)) continue;
            pairs.emplace_back(a, b);
        }
    }

    std::vector<std::pair<Rational, const std::pair<Arc, Arc>*>> ranked;
    for (const auto& pr : pairs) {
        Arc joint = joined_arc(pr.first, pr.second);
        std::optional<int> vnum;
        for (const auto& comp : df.components()) {
            auto v = valuation(substitute_arc(comp, joint));
            if (v && (!vnum || *v < *vnum)) vnum = v;
        }
        auto vden = pair_difference_valuation(pr.first, pr.second);
        if (!vnum) {
            // f identifies two distinct arcs: not injective.
            est.verdict = ExponentVerdict::LikelyInfinite;
            est.fitted_alpha = kInf;
            est.witness_arc = joint;
            return est;
        }
        Rational ratio(*vnum, *vden);
        if (!est.arc_lower_bound || ratio > *est.arc_lower_bound) {
            est.arc_lower_bound = ratio;
            est.witness_arc = joint;
        }
        ranked.emplace_back(ratio, &pr);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    // Numeric channel: at each radius of the joint sphere ||(x,x')|| = r,
    // find the most degenerate pair, i.e. maximize
    // q = log||f(x)-f(x')|| / log||x-x'||, then line-fit the worst pairs.
    SphereObjective objective = [&](const std::vector<double>& w) {
        std::vector<double> x(w.begin(), w.begin() + n), xp(w.begin() + n, w.end());
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (x[i] - xp[i]) * (x[i] - xp[i]);
        double d = std::sqrt(d2);
        double scale = vec_norm(w);
        // d too small relative to r loses accuracy to cancellation
        if (d <= 1e-6 * scale || d >= scale) return kInf;
        double v = df.norm_at(w);
        if (v <= 0.0) return -kInf; // non-injective pair found numerically
        double q = std::log(v) / std::log(d);
        return -q;
    };

    SphereMinConfig sc = cfg.sphere_config();
    std::vector<std::pair<double, double>> fit_points; // (||x-x'||, ||f(x)-f(x')||)
    for (int k = 0; k < cfg.K; ++k) {
        double r = cfg.r0 * std::pow(cfg.rho, k);
        std::vector<std::vector<double>> seeds;
        for (const auto& [ratio, pr] : ranked) {
            if (seeds.size() >= 4) break;
            Arc joint = joined_arc(pr->first, pr->second);
            auto s = arc_parameter_for_radius(joint, r);
            if (!s) continue;
            std::vector<double> p = joint.at(*s);
            double nn = vec_norm(p);
            if (nn == 0) continue;
            for (double& x : p) x /= nn;
            seeds.push_back(std::move(p));
        }
        SphereMinResult mr = minimize_on_sphere(objective, 2 * n, r, sc, seeds, true);
        if (!std::isfinite(mr.value)) {
            est.diverged_radii.push_back(k);
            continue;
        }
        // recover (d, v) at the optimum
        double d2 = 0.0;
        for (int i = 0; i < n; ++i)
            d2 += (mr.point[i] - mr.point[n + i]) * (mr.point[i] - mr.point[n + i]);
        double d = std::sqrt(d2);
        double v = df.norm_at(mr.point);
        est.radii_trace.emplace_back(r, v);
        if (d > 0.0 && v > 0.0) fit_points.emplace_back(d, v);
        if (!mr.converged) est.diverged_radii.push_back(k);
    }

    LogLogFit fit = fit_with_noise_trim(fit_points);
    if (!fit.ok) {
        est.verdict = ExponentVerdict::LikelyInfinite;
        est.fitted_alpha = kInf;
        return est;
    }
    est.fitted_alpha = fit.slope;
    est.fit_residual = fit.residual;
    est.intercept = std::exp(fit.intercept);

    // Holder floor: injective analytic maps cannot have exponent < 1.
    if (est.fitted_alpha < 1.0) {
        est.fitted_alpha = 1.0;
        est.floor_clamped = true;
    }
    if (fit.slope > kAlphaMax) {
        est.verdict = ExponentVerdict::LikelyInfinite;
        return est;
    }
    if (est.arc_lower_bound &&
        est.fitted_alpha < rational_to_double(*est.arc_lower_bound) - kConsistencySlack) {
        est.verdict = ExponentVerdict::Withheld;
        est.consistency_warning = true;
        return est;
    }
    est.verdict = ExponentVerdict::FiniteEstimated;
    return est;
}

PolyMap diagonal_minor_system(const PolyMap& f) {
    const int n = f.domain_dim();
    AlphaMatrix a = build_alpha(f);
    std::vector<Poly> comps;
    for (Poly m : minors(a)) {
        // restrict to the diagonal x' = x
        for (int i = 0; i < n; ++i)
            m = m.substitute(n + i, Poly::variable(m.vars(), i));
        Poly reduced = m;
        for (int i = 2 * n - 1; i >= n; --i) reduced = reduced.drop_variable(i);
        comps.push_back(reduced);
    }
    return PolyMap(n, std::move(comps));
}

ExponentEstimate diagonal_probe(const PolyMap& f, const EstimatorConfig& cfg) {
    if (f.domain_dim() > f.codomain_dim())
        throw PolyError("diagonal_probe requires n <= p");
    return estimate_exponent_at_zero(diagonal_minor_system(f), cfg);
}

} // namespace germforge
