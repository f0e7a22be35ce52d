#include <chrono>
#include <cmath>
#include <cstdio>

#include "germforge/lojestimate.hpp"
#include "germforge/parse.hpp"

using namespace germforge;

namespace {

double run(const SphereObjective& obj, int dim, const SphereMinConfig& cfg, bool parallel,
           double* out_value) {
    auto t0 = std::chrono::steady_clock::now();
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) {
        double r = 0.4 * std::pow(0.7, k);
        SphereMinResult res = parallel ? minimize_on_sphere(obj, dim, r, cfg, {}, true)
                                       : minimize_on_sphere_serial(obj, dim, r, cfg, {});
        acc += res.value;
    }
    auto t1 = std::chrono::steady_clock::now();
    *out_value = acc;
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    PolyMap f = parse_map_fixed("f(x,y) = (x, y^2, y*(x^2+y^2), y*(x^4+y^6+t*y^2))", 1);
    PolyMap sys = delta_tilde(f);
    SphereObjective obj = [&](const std::vector<double>& p) { return sys.norm_at(p); };

    SphereMinConfig cfg;
    cfg.starts = 64;
    cfg.max_iters = 1200;
    cfg.seed = 7;

    double v_serial = 0.0, v_parallel = 0.0;
    double warm = 0.0;
    run(obj, 4, cfg, true, &warm); // warm-up
    double ts = run(obj, 4, cfg, false, &v_serial);
    double tp = run(obj, 4, cfg, true, &v_parallel);

    std::printf("sphere multistart minimization, %d starts x 5 radii (dim 4)\n", cfg.starts);
    std::printf("serial reference: %8.3f s  (checksum %.17g)\n", ts, v_serial);
    std::printf("openmp parallel:  %8.3f s  (checksum %.17g)\n", tp, v_parallel);
    std::printf("speedup: %.2fx, results %s\n", ts / tp,
                v_serial == v_parallel ? "bitwise identical" : "DIFFER");
    return v_serial == v_parallel ? 0 : 1;
}
