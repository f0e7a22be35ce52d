#include "germforge/knot.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "germforge/spheremin.hpp"

namespace germforge {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

template <std::size_t D>
double dist2(const std::array<double, D>& a, const std::array<double, D>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

// min distance between segments [a0,a1] and [b0,b1] (Ericson, works in any dim)
template <std::size_t D>
double segment_distance(const std::array<double, D>& a0, const std::array<double, D>& a1,
                        const std::array<double, D>& b0, const std::array<double, D>& b1) {
    std::array<double, D> d1{}, d2{}, r{};
    double A = 0, E = 0, B = 0, C = 0, F = 0;
    for (std::size_t i = 0; i < D; ++i) {
        d1[i] = a1[i] - a0[i];
        d2[i] = b1[i] - b0[i];
        r[i] = a0[i] - b0[i];
        A += d1[i] * d1[i];
        E += d2[i] * d2[i];
        B += d1[i] * d2[i];
        C += d1[i] * r[i];
        F += d2[i] * r[i];
    }
    double s = 0, t = 0;
    double denom = A * E - B * B;
    if (denom > 1e-30) s = std::clamp((B * F - C * E) / denom, 0.0, 1.0);
    t = (E > 1e-30) ? std::clamp((B * s + F) / E, 0.0, 1.0) : 0.0;
    if (A > 1e-30) {
        s = std::clamp((B * t - C) / A, 0.0, 1.0);
        t = (E > 1e-30) ? std::clamp((B * s + F) / E, 0.0, 1.0) : 0.0;
    }
    double dd = 0.0;
    for (std::size_t i = 0; i < D; ++i) {
        double u = a0[i] + s * d1[i] - (b0[i] + t * d2[i]);
        dd += u * u;
    }
    return std::sqrt(dd);
}

struct Pass {
    double param; // segment index + fraction along the curve
    int crossing;
    bool over;
    int sign;
};

// signed Gauss sequence for one fixed starting rotation/orientation after
// relabeling by first appearance
std::vector<int> gauss_variant(const std::vector<CrossingEvent>& ev, int rot, bool reversed) {
    const int m = static_cast<int>(ev.size());
    std::vector<int> label(m, 0); // by crossing id; ids are < m
    std::vector<int> out;
    out.reserve(m);
    std::vector<int> relabel(m, 0);
    int next = 1;
    for (int k = 0; k < m; ++k) {
        int idx = reversed ? (rot - k % m + 2 * m) % m : (rot + k) % m;
        const CrossingEvent& e = ev[idx];
        if (relabel[e.crossing] == 0) relabel[e.crossing] = next++;
        out.push_back(e.over ? relabel[e.crossing] : -relabel[e.crossing]);
    }
    (void)label;
    return out;
}

std::vector<std::array<int, 4>> pd_from_events(const std::vector<CrossingEvent>& ev) {
    const int m = static_cast<int>(ev.size());
    const int n = m / 2;
    std::vector<std::array<int, 4>> pd(n);
    std::vector<int> under_pos(n, -1), over_pos(n, -1), sign(n, 0);
    for (int k = 0; k < m; ++k) {
        if (ev[k].over)
            over_pos[ev[k].crossing] = k;
        else
            under_pos[ev[k].crossing] = k;
        sign[ev[k].crossing] = ev[k].sign;
    }
    auto in_edge = [m](int k) { return k == 0 ? m : k; };
    auto out_edge = [](int k) { return k + 1; };
    for (int c = 0; c < n; ++c) {
        int ui = in_edge(under_pos[c]), uo = out_edge(under_pos[c]);
        int oi = in_edge(over_pos[c]), oo = out_edge(over_pos[c]);
        if (sign[c] > 0)
            pd[c] = {ui, oo, uo, oi};
        else
            pd[c] = {ui, oi, uo, oo};
    }
    return pd;
}

} // namespace

std::vector<int> canonical_gauss_code(const std::vector<CrossingEvent>& events) {
    const int m = static_cast<int>(events.size());
    if (m == 0) return {};
    // crossing ids must be dense for gauss_variant's relabel table
    std::vector<CrossingEvent> ev = events;
    {
        std::vector<int> map(2 * m, -1);
        int next = 0;
        for (auto& e : ev) {
            if (map[e.crossing] < 0) map[e.crossing] = next++;
            e.crossing = map[e.crossing];
        }
    }
    std::vector<int> best;
    for (int rev = 0; rev < 2; ++rev) {
        for (int rot = 0; rot < m; ++rot) {
            std::vector<int> cand = gauss_variant(ev, rot, rev == 1);
            if (best.empty() || cand < best) best = std::move(cand);
        }
    }
    return best;
}

KnotDiagram diagram_from_events(std::vector<CrossingEvent> events) {
    KnotDiagram d;
    // renumber crossings by first appearance
    const int m = static_cast<int>(events.size());
    std::vector<int> map;
    for (auto& e : events) {
        if (e.crossing >= static_cast<int>(map.size())) map.resize(e.crossing + 1, -1);
    }
    int next = 0;
    for (auto& e : events) {
        if (map[e.crossing] < 0) map[e.crossing] = next++;
        e.crossing = map[e.crossing];
    }
    d.crossing_count = m / 2;
    d.gauss_code = canonical_gauss_code(events);
    d.pd_code = pd_from_events(events);
    d.events = std::move(events);
    return d;
}

LinkCurve embed_link(const PolyMap& f, const std::vector<std::array<double, 2>>& fiber,
                     double epsilon) {
    if (f.domain_dim() != 2 || f.codomain_dim() != 4)
        throw DimensionMismatch("embed_link needs (n,p) = (2,4)");
    LinkCurve link;
    link.epsilon = epsilon;
    link.source_points = fiber;
    link.points.reserve(fiber.size());
    for (const auto& s : fiber) {
        std::vector<double> img = f.evaluate({s[0], s[1]});
        double n = std::sqrt(img[0] * img[0] + img[1] * img[1] + img[2] * img[2] + img[3] * img[3]);
        if (n == 0.0) throw SelfIntersection("fiber point maps to the origin");
        std::array<double, 4> q;
        for (int i = 0; i < 4; ++i) q[i] = img[i] * epsilon / n;
        link.points.push_back(q);
    }

    const int N = static_cast<int>(link.points.size());
    if (N < 8) throw SelfIntersection("too few points to verify embedding");
    const double tol = 1e-7 * epsilon;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 2; j < N; ++j) {
            if (i == 0 && j == N - 1) continue; // cyclically adjacent
            double dd = segment_distance(link.points[i], link.points[(i + 1) % N],
                                         link.points[j], link.points[(j + 1) % N]);
            if (dd < tol) throw SelfIntersection("link polyline self-intersects");
        }
    }
    return link;
}

KnotDiagram project_diagram(const LinkCurve& link, std::uint64_t seed, int max_retries) {
    const int N = static_cast<int>(link.points.size());
    if (N < 8) throw GenericityFailure("curve too short to project");
    const double eps = link.epsilon;

    // pole: sampled direction on S^3 farthest from the curve
    auto candidates = low_discrepancy_directions(4, 512, seed);
    std::array<double, 4> pole{};
    double best = -1.0;
    for (const auto& u : candidates) {
        std::array<double, 4> p{u[0] * eps, u[1] * eps, u[2] * eps, u[3] * eps};
        double mind = std::numeric_limits<double>::infinity();
        for (const auto& q : link.points) mind = std::min(mind, dist2(p, q));
        if (mind > best) {
            best = mind;
            pole = p;
        }
    }

    // orthonormal basis of pole^perp in R^4 (Gram-Schmidt over coordinate axes)
    std::array<std::array<double, 4>, 3> basis{};
    {
        std::array<double, 4> u = pole;
        double un = std::sqrt(dist2(u, std::array<double, 4>{}));
        for (double& x : u) x /= un;
        int filled = 0;
        for (int axis = 0; axis < 4 && filled < 3; ++axis) {
            std::array<double, 4> v{};
            v[axis] = 1.0;
            double d = 0;
            for (int i = 0; i < 4; ++i) d += v[i] * u[i];
            for (int i = 0; i < 4; ++i) v[i] -= d * u[i];
            for (int k = 0; k < filled; ++k) {
                double e = 0;
                for (int i = 0; i < 4; ++i) e += v[i] * basis[k][i];
                for (int i = 0; i < 4; ++i) v[i] -= e * basis[k][i];
            }
            double vn = std::sqrt(dist2(v, std::array<double, 4>{}));
            if (vn < 1e-9) continue;
            for (double& x : v) x /= vn;
            basis[filled++] = v;
        }
        if (filled < 3) throw GenericityFailure("degenerate pole basis");
    }

    // stereographic image in R^3
    std::vector<std::array<double, 3>> space(N);
    {
        std::array<double, 4> u = pole;
        double un = std::sqrt(dist2(u, std::array<double, 4>{}));
        for (double& x : u) x /= un;
        for (int i = 0; i < N; ++i) {
            const auto& q = link.points[i];
            double h = q[0] * u[0] + q[1] * u[1] + q[2] * u[2] + q[3] * u[3];
            double denom = eps - h;
            if (denom < 1e-9 * eps) throw GenericityFailure("curve passes the projection pole");
            for (int k = 0; k < 3; ++k) {
                double c = 0;
                for (int i4 = 0; i4 < 4; ++i4) c += q[i4] * basis[k][i4];
                space[i][k] = eps * c / denom;
            }
        }
    }

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::mt19937_64 rng(mix(seed ^ 0x6b6e6f74ULL, attempt));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::array<double, 3> v{gauss(rng), gauss(rng), gauss(rng)};
        double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (vn < 1e-9) continue;
        for (double& x : v) x /= vn;
        // plane basis
        std::array<double, 3> b1{-v[1], v[0], 0.0};
        double b1n = std::hypot(b1[0], b1[1]);
        if (b1n < 1e-6) b1 = {1.0, 0.0, 0.0}, b1n = 1.0;
        for (double& x : b1) x /= b1n;
        std::array<double, 3> b2{v[1] * b1[2] - v[2] * b1[1], v[2] * b1[0] - v[0] * b1[2],
                                 v[0] * b1[1] - v[1] * b1[0]};

        std::vector<std::array<double, 2>> plane(N);
        std::vector<double> depth(N);
        double scale = 0.0;
        for (int i = 0; i < N; ++i) {
            const auto& q = space[i];
            plane[i] = {q[0] * b1[0] + q[1] * b1[1] + q[2] * b1[2],
                        q[0] * b2[0] + q[1] * b2[1] + q[2] * b2[2]};
            depth[i] = q[0] * v[0] + q[1] * v[1] + q[2] * v[2];
            scale = std::max(scale, std::hypot(plane[i][0], plane[i][1]));
        }
        const double sep = 1e-6 * scale;

        bool generic = true;
        std::vector<Pass> passes;
        std::vector<std::array<double, 2>> cross_pts;
        int crossing_id = 0;
        for (int i = 0; i < N && generic; ++i) {
            const auto& p0 = plane[i];
            const auto& p1 = plane[(i + 1) % N];
            for (int j = i + 2; j < N && generic; ++j) {
                if (i == 0 && j == N - 1) continue;
                const auto& q0 = plane[j];
                const auto& q1 = plane[(j + 1) % N];
                double d1x = p1[0] - p0[0], d1y = p1[1] - p0[1];
                double d2x = q1[0] - q0[0], d2y = q1[1] - q0[1];
                double denom = d1x * d2y - d1y * d2x;
                double rx = q0[0] - p0[0], ry = q0[1] - p0[1];
                if (std::abs(denom) < 1e-14 * scale * scale) {
                    if (segment_distance(p0, p1, q0, q1) < sep) generic = false;
                    continue;
                }
                double s = (rx * d2y - ry * d2x) / denom;
                double t = (rx * d1y - ry * d1x) / denom;
                const double win = 1e-9;
                if (s < -win || s > 1 + win || t < -win || t > 1 + win) continue;
                std::array<double, 2> pt{p0[0] + s * d1x, p0[1] + s * d1y};
                double emin = std::min(
                    std::min(std::hypot(pt[0] - p0[0], pt[1] - p0[1]),
                             std::hypot(pt[0] - p1[0], pt[1] - p1[1])),
                    std::min(std::hypot(pt[0] - q0[0], pt[1] - q0[1]),
                             std::hypot(pt[0] - q1[0], pt[1] - q1[1])));
                if (emin <= sep) {
                    generic = false;
                    break;
                }
                double di = depth[i] + s * (depth[(i + 1) % N] - depth[i]);
                double dj = depth[j] + t * (depth[(j + 1) % N] - depth[j]);
                if (std::abs(di - dj) <= sep) {
                    generic = false;
                    break;
                }
                bool i_over = di > dj;
                // sign: orientation of (over direction, under direction)
                double cr = i_over ? (d1x * d2y - d1y * d2x) : (d2x * d1y - d2y * d1x);
                int sgn = cr > 0 ? 1 : -1;
                passes.push_back({i + s, crossing_id, i_over, sgn});
                passes.push_back({j + t, crossing_id, !i_over, sgn});
                cross_pts.push_back(pt);
                ++crossing_id;
            }
        }
        if (generic) {
            for (std::size_t a = 0; a + 1 < cross_pts.size() && generic; ++a)
                for (std::size_t b = a + 1; b < cross_pts.size(); ++b)
                    if (std::hypot(cross_pts[a][0] - cross_pts[b][0],
                                   cross_pts[a][1] - cross_pts[b][1]) <= sep) {
                        generic = false;
                        break;
                    }
        }
        if (!generic) continue;

        std::sort(passes.begin(), passes.end(),
                  [](const Pass& a, const Pass& b) { return a.param < b.param; });
        std::vector<CrossingEvent> events;
        events.reserve(passes.size());
        for (const Pass& p : passes) events.push_back({p.crossing, p.over, p.sign});
        KnotDiagram d = diagram_from_events(std::move(events));
        d.plane_points = std::move(plane);
        d.depths = std::move(depth);
        d.crossing_positions = std::move(cross_pts);
        return d;
    }
    throw GenericityFailure("no generic projection found within the retry budget");
}

KnotDiagram simplify_diagram(const KnotDiagram& d) {
    std::vector<CrossingEvent> ev = d.events;
    auto erase_crossings = [&](int a, int b) {
        std::vector<CrossingEvent> kept;
        kept.reserve(ev.size());
        for (const auto& e : ev)
            if (e.crossing != a && e.crossing != b) kept.push_back(e);
        ev = std::move(kept);
    };
    bool changed = true;
    while (changed && !ev.empty()) {
        changed = false;
        const int m = static_cast<int>(ev.size());
        // R1: the two passes of one crossing are adjacent
        for (int k = 0; k < m; ++k) {
            if (ev[k].crossing == ev[(k + 1) % m].crossing) {
                erase_crossings(ev[k].crossing, ev[k].crossing);
                changed = true;
                break;
            }
        }
        if (changed) continue;
        // R2: adjacent same-side passes of two crossings whose partner
        // passes are also adjacent (a bigon face)
        std::vector<int> other(2 * m, -1);
        {
            std::vector<int> first(2 * m, -1);
            for (int k = 0; k < m; ++k) {
                int c = ev[k].crossing;
                if (first[c] < 0)
                    first[c] = k;
                else {
                    other[k] = first[c];
                    other[first[c]] = k;
                }
            }
        }
        for (int k = 0; k < m && !changed; ++k) {
            int l = (k + 1) % m;
            if (ev[k].crossing == ev[l].crossing) continue;
            if (ev[k].over != ev[l].over) continue;
            int pa = other[k], pb = other[l];
            if ((pa + 1) % m == pb || (pb + 1) % m == pa) {
                erase_crossings(ev[k].crossing, ev[l].crossing);
                changed = true;
            }
        }
    }
    return diagram_from_events(std::move(ev));
}

std::string diagram_svg(const KnotDiagram& d) {
    std::ostringstream out;
    const auto& pts = d.plane_points;
    if (pts.empty()) {
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\"/>";
        return out.str();
    }
    double xmin = pts[0][0], xmax = xmin, ymin = pts[0][1], ymax = ymin;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    double span = std::max(xmax - xmin, ymax - ymin);
    if (span <= 0) span = 1.0;
    double pad = 0.08 * span;
    auto X = [&](double x) { return (x - xmin + pad) * 512.0 / (span + 2 * pad); };
    auto Y = [&](double y) { return (ymax - y + pad) * 512.0 / (span + 2 * pad); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" "
           "viewBox=\"0 0 512 512\">\n";
    out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        out << (i == 0 ? 'M' : 'L') << X(pts[i][0]) << ' ' << Y(pts[i][1]);
    out << "Z\"/>\n";

    // redraw the over strand near each crossing on a white underlay, which
    // leaves the customary gap in the understrand
    const int N = static_cast<int>(pts.size());
    const double gap = 0.02 * span;
    for (std::size_t c = 0; c < d.crossing_positions.size(); ++c) {
        const auto& cp = d.crossing_positions[c];
        // locate the over strand: nearest segment with the greater depth
        int best_seg = -1;
        double best_d = std::numeric_limits<double>::infinity(), best_depth = 0;
        for (int i = 0; i < N; ++i) {
            const auto& a = pts[i];
            const auto& b = pts[(i + 1) % N];
            double dxs = b[0] - a[0], dys = b[1] - a[1];
            double len2 = dxs * dxs + dys * dys;
            double t = len2 > 0 ? std::clamp(((cp[0] - a[0]) * dxs + (cp[1] - a[1]) * dys) / len2,
                                             0.0, 1.0)
                                : 0.0;
            double dd = std::hypot(a[0] + t * dxs - cp[0], a[1] + t * dys - cp[1]);
            if (dd < 1e-5 * span) {
                double dep = d.depths[i] + t * (d.depths[(i + 1) % N] - d.depths[i]);
                if (best_seg < 0 || dep > best_depth) {
                    best_seg = i;
                    best_depth = dep;
                    best_d = dd;
                }
            }
        }
        (void)best_d;
        if (best_seg < 0) continue;
        const auto& a = pts[best_seg];
        const auto& b = pts[(best_seg + 1) % N];
        double dxs = b[0] - a[0], dys = b[1] - a[1];
        double len = std::hypot(dxs, dys);
        if (len == 0) continue;
        double ux = dxs / len, uy = dys / len;
        std::array<double, 2> g0{cp[0] - gap * ux, cp[1] - gap * uy};
        std::array<double, 2> g1{cp[0] + gap * ux, cp[1] + gap * uy};
        out << "<path fill=\"none\" stroke=\"white\" stroke-width=\"6\" d=\"M" << X(g0[0]) << ' '
            << Y(g0[1]) << 'L' << X(g1[0]) << ' ' << Y(g1[1]) << "\"/>\n";
        out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"M" << X(g0[0]) << ' '
            << Y(g0[1]) << 'L' << X(g1[0]) << ' ' << Y(g1[1]) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace germforge
