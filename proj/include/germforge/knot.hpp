#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "germforge/fiber.hpp"

namespace germforge {

struct SelfIntersection : PolyError {
    using PolyError::PolyError;
};
struct GenericityFailure : PolyError {
    using PolyError::PolyError;
};

struct LinkCurve {
    double epsilon = 0.0;
    std::vector<std::array<double, 4>> points;        // closed, on the epsilon-sphere
    std::vector<std::array<double, 2>> source_points; // matching fiber points
};

// One pass through a crossing, in traversal order along the curve.
struct CrossingEvent {
    int crossing = 0; // 0-based crossing id
    bool over = false;
    int sign = 0; // +1 / -1, same for both passes
};

struct KnotDiagram {
    std::vector<CrossingEvent> events; // 2 * crossing_count entries
    int crossing_count = 0;
    std::vector<int> gauss_code;                 // canonical: +id over, -id under, ids from 1
    std::vector<std::array<int, 4>> pd_code;     // X(under_in, ., under_out, .) tuples
    std::vector<std::array<double, 2>> plane_points; // projected polyline (for SVG)
    std::vector<double> depths;
    std::vector<std::array<double, 2>> crossing_positions;
};

// Maps the fiber through f onto the epsilon-sphere in R^4 and checks the
// image polyline is simple. Throws SelfIntersection otherwise.
LinkCurve embed_link(const PolyMap& f, const std::vector<std::array<double, 2>>& fiber,
                     double epsilon);

// Stereographic projection from the sampled pole farthest from the curve,
// then orthogonal projection to a seeded random plane, retried until all
// crossings are transverse and separated. Throws GenericityFailure.
KnotDiagram project_diagram(const LinkCurve& link, std::uint64_t seed, int max_retries = 40);

// Reidemeister I/II reductions on the event sequence to a fixed point.
// Never increases the crossing count; geometry fields are dropped.
KnotDiagram simplify_diagram(const KnotDiagram& d);

// Canonical signed Gauss code: minimum over rotations and orientation
// reversal after relabeling crossings by first appearance.
std::vector<int> canonical_gauss_code(const std::vector<CrossingEvent>& events);

// Diagram rebuilt from an event sequence (codes only, no geometry).
KnotDiagram diagram_from_events(std::vector<CrossingEvent> events);

// SVG rendering of the diagram with gaps at underpasses.
std::string diagram_svg(const KnotDiagram& d);

} // namespace germforge
