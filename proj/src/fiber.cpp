#include "germforge/fiber.hpp"

#include <cmath>
#include <limits>

namespace germforge {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct LevelFunc {
    Poly g;
    Poly gx;
    Poly gy;

    explicit LevelFunc(const PolyMap& f)
        : g(norm_sq_poly(f)), gx(g.partial(0)), gy(g.partial(1)) {}

    double value(double x, double y) const { return g.evaluate({x, y}); }
    std::array<double, 2> grad(double x, double y) const {
        return {gx.evaluate({x, y}), gy.evaluate({x, y})};
    }
};

// Smallest circle radius at which ||f||^2 exceeds the level everywhere,
// capped; bounds the sampling disk and the seed bisection.
double enclosing_radius(const LevelFunc& lf, double level) {
    double r = 1e-3;
    for (int step = 0; step < 200; ++step) {
        double mn = lf.value(r, 0.0);
        for (int a = 1; a < 64; ++a) {
            double th = 2.0 * kPi * a / 64;
            mn = std::min(mn, lf.value(r * std::cos(th), r * std::sin(th)));
        }
        if (mn > level) return r;
        r *= 1.2;
    }
    return r;
}

} // namespace

Poly norm_sq_poly(const PolyMap& f) {
    Poly g(f.vars());
    for (const Poly& c : f.components()) g = g + c * c;
    return g;
}

MilnorProbeResult milnor_radius_probe(const PolyMap& f, double epsilon,
                                      const EstimatorConfig& cfg) {
    (void)cfg;
    if (f.domain_dim() != 2) throw DimensionMismatch("milnor_radius_probe needs n = 2");
    if (!(epsilon > 0)) throw PolyError("epsilon must be positive");

    LevelFunc lf(f);
    const double level = epsilon * epsilon;
    const double r_max = enclosing_radius(lf, level);
    const double threshold = 1e-6 * epsilon;

    MilnorProbeResult out;
    out.probable = true;
    out.min_grad_norm = std::numeric_limits<double>::infinity();

    // descending bands [level/4^{j+1}, level/4^j]; the union is the annulus
    // eta <= ||f||^2 <= epsilon^2 with eta = level/4^6
    const int bands = 6;
    const double eta = level / std::pow(4.0, bands);
    const double min_r = 1e-3 * r_max;
    const int n_r = 160, n_a = 256;
    for (int i = 1; i <= n_r; ++i) {
        double r = r_max * i / n_r;
        if (r < min_r) continue;
        for (int a = 0; a < n_a; ++a) {
            double th = 2.0 * kPi * a / n_a;
            double x = r * std::cos(th), y = r * std::sin(th);
            double v = lf.value(x, y);
            if (v < eta || v > level) continue;
            auto gr = lf.grad(x, y);
            double gn = std::hypot(gr[0], gr[1]);
            if (gn < out.min_grad_norm) {
                out.min_grad_norm = gn;
                if (gn <= threshold) {
                    out.probable = false;
                    out.failure_point = {x, y};
                }
            }
        }
    }
    return out;
}

std::vector<std::array<double, 2>> trace_fiber(const PolyMap& f, double epsilon,
                                               const EstimatorConfig& cfg) {
    (void)cfg;
    if (f.domain_dim() != 2) throw DimensionMismatch("trace_fiber needs n = 2");
    if (!(epsilon > 0)) throw PolyError("epsilon must be positive");

    LevelFunc lf(f);
    const double level = epsilon * epsilon;
    const double g_tol = 1e-12 * level;

    // seed: bisection along the positive x-axis
    double hi = enclosing_radius(lf, level);
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (lf.value(mid, 0.0) < level)
            lo = mid;
        else
            hi = mid;
    }
    std::array<double, 2> seed{0.5 * (lo + hi), 0.0};

    auto correct = [&](std::array<double, 2>& p) {
        for (int it = 0; it < 40; ++it) {
            double v = lf.value(p[0], p[1]) - level;
            if (std::abs(v) < g_tol) return true;
            auto gr = lf.grad(p[0], p[1]);
            double gg = gr[0] * gr[0] + gr[1] * gr[1];
            if (gg == 0.0) return false;
            p[0] -= v * gr[0] / gg;
            p[1] -= v * gr[1] / gg;
        }
        return std::abs(lf.value(p[0], p[1]) - level) < g_tol;
    };
    if (!correct(seed)) throw TracingStalled("could not place the seed on the level set");

    const double step0 = epsilon / 50.0;
    const double step_floor = epsilon / 5000.0;
    const int max_steps = 400000;

    std::vector<std::array<double, 2>> pts{seed};
    std::array<double, 2> cur = seed;
    double step = step0;
    for (int k = 0; k < max_steps; ++k) {
        auto gr = lf.grad(cur[0], cur[1]);
        double gn = std::hypot(gr[0], gr[1]);
        if (gn == 0.0) throw TracingStalled("gradient vanished on the fiber");
        // consistent orientation: rotate the gradient by +90 degrees
        std::array<double, 2> tang{-gr[1] / gn, gr[0] / gn};

        std::array<double, 2> next{cur[0] + step * tang[0], cur[1] + step * tang[1]};
        if (!correct(next)) {
            step *= 0.5;
            if (step < step_floor) throw TracingStalled("correction failed at the minimum step");
            continue;
        }
        double moved = std::hypot(next[0] - cur[0], next[1] - cur[1]);
        if (moved < 0.25 * step) {
            // corrector pulled the predictor back; the step is too large here
            step *= 0.5;
            if (step < step_floor) throw TracingStalled("no progress at the minimum step");
            continue;
        }
        cur = next;
        double d_seed = std::hypot(cur[0] - seed[0], cur[1] - seed[1]);
        if (pts.size() >= 8 && d_seed < 0.5 * step) return pts;
        pts.push_back(cur);
        step = std::min(step * 1.5, step0);
    }
    throw TracingStalled("fiber did not close within the step budget");
}

double winding_number(const std::vector<std::array<double, 2>>& loop) {
    double total = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = loop[i];
        const auto& b = loop[(i + 1) % n];
        double cross = a[0] * b[1] - a[1] * b[0];
        double dot = a[0] * b[0] + a[1] * b[1];
        total += std::atan2(cross, dot);
    }
    return total / (2.0 * kPi);
}

} // namespace germforge
