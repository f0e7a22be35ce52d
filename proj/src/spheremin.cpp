#include "germforge/spheremin.hpp"

#include <cmath>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace germforge {

namespace {

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
    double n = norm(v);
    if (n > 0) {
        for (double& x : v) x /= n;
    } else {
        v.assign(v.size(), 0.0);
        v[0] = 1.0;
    }
}

struct StartResult {
    double value;
    std::vector<double> dir;
    bool converged;
};

// One deterministic descent from a starting unit direction. Poll set:
// coordinate tangents plus seeded random tangents (the random directions help
// in the narrow curved valleys these objectives produce near degenerate arcs).
StartResult descend(const SphereObjective& objective, int dim, double radius,
                    const SphereMinConfig& cfg, std::vector<double> u,
                    std::uint64_t stream_seed) {
    std::mt19937_64 rng(stream_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto eval_dir = [&](const std::vector<double>& d) {
        std::vector<double> p(d);
        for (double& x : p) x *= radius;
        return objective(p);
    };

    normalize(u);
    double best = eval_dir(u);
    double step = cfg.init_step;
    bool converged = false;

    std::vector<double> cand(dim);
    const int n_random = 2 * dim;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        bool improved = false;
        // coordinate polls
        for (int i = 0; i < dim && !improved; ++i) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                cand = u;
                cand[i] += sgn * step;
                normalize(cand);
                double v = eval_dir(cand);
                if (v < best) {
                    best = v;
                    u = cand;
                    improved = true;
                    break;
                }
            }
        }
        // random tangent polls
        for (int k = 0; k < n_random && !improved; ++k) {
            double dot = 0.0;
            for (int i = 0; i < dim; ++i) {
                cand[i] = gauss(rng);
                dot += cand[i] * u[i];
            }
            double tn = 0.0;
            for (int i = 0; i < dim; ++i) {
                cand[i] -= dot * u[i];
                tn += cand[i] * cand[i];
            }
            tn = std::sqrt(tn);
            if (tn == 0.0) continue;
            for (int i = 0; i < dim; ++i) cand[i] = u[i] + step * cand[i] / tn;
            normalize(cand);
            double v = eval_dir(cand);
            if (v < best) {
                best = v;
                u = cand;
                improved = true;
            }
        }
        if (!improved) {
            step *= 0.5;
            if (step < cfg.tol) {
                converged = true;
                break;
            }
        } else {
            step = std::min(step * 2.0, cfg.init_step);
        }
    }
    return StartResult{best, std::move(u), converged};
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SphereMinResult run_multistart(const SphereObjective& objective, int dim, double radius,
                               const SphereMinConfig& cfg,
                               const std::vector<std::vector<double>>& seed_dirs,
                               bool parallel) {
    std::vector<std::vector<double>> starts =
        low_discrepancy_directions(dim, cfg.starts, cfg.seed);
    for (const auto& d : seed_dirs) {
        std::vector<double> u = d;
        normalize(u);
        starts.push_back(std::move(u));
    }

    const int S = static_cast<int>(starts.size());
    std::vector<StartResult> results(S);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int s = 0; s < S; ++s) {
        results[s] = descend(objective, dim, radius, cfg, starts[s], mix(cfg.seed, s));
    }
    (void)parallel;

    // deterministic reduction: min value, ties broken by start index
    SphereMinResult out;
    out.value = std::numeric_limits<double>::infinity();
    for (int s = 0; s < S; ++s) {
        if (results[s].value < out.value) {
            out.value = results[s].value;
            out.start_index = s;
            out.converged = results[s].converged;
            out.point = results[s].dir;
        }
    }
    for (double& x : out.point) x *= radius;
    return out;
}

} // namespace

std::vector<std::vector<double>> low_discrepancy_directions(int dim, int count,
                                                            std::uint64_t seed) {
    // Halton-style radical-inverse grid in [0,1)^dim mapped through the
    // inverse normal-ish Box-Muller trick via pairs; a seeded offset keeps
    // streams distinct across seeds while staying reproducible.
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    auto radical_inverse = [](int base, int i) {
        double inv = 1.0 / base, f = inv, r = 0.0;
        while (i > 0) {
            r += f * (i % base);
            i /= base;
            f *= inv;
        }
        return r;
    };
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5deadbeefULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> offset(dim);
    for (int i = 0; i < dim; ++i) offset[i] = unif(rng);

    std::vector<std::vector<double>> dirs;
    dirs.reserve(count);
    for (int k = 0; k < count; ++k) {
        std::vector<double> u(dim);
        double n = 0.0;
        for (int i = 0; i < dim; ++i) {
            double x = radical_inverse(primes[i % 8], k + 1) + offset[i];
            x -= std::floor(x);
            // map to a signed coordinate via inverse of |z| heuristic
            u[i] = std::tan(3.14159265358979323846 * (x - 0.5));
            n += u[i] * u[i];
        }
        n = std::sqrt(n);
        if (n == 0.0) {
            u[0] = 1.0;
        } else {
            for (double& x : u) x /= n;
        }
        dirs.push_back(std::move(u));
    }
    return dirs;
}

SphereMinResult minimize_on_sphere(const SphereObjective& objective, int dim, double radius,
                                   const SphereMinConfig& cfg,
                                   const std::vector<std::vector<double>>& seed_dirs,
                                   bool parallel) {
    return run_multistart(objective, dim, radius, cfg, seed_dirs, parallel);
}

SphereMinResult minimize_on_sphere_serial(const SphereObjective& objective, int dim,
                                          double radius, const SphereMinConfig& cfg,
                                          const std::vector<std::vector<double>>& seed_dirs) {
    return run_multistart(objective, dim, radius, cfg, seed_dirs, false);
}

} // namespace germforge
