#pragma once
#include <vector>

#include "calabi/mesh.hpp"
#include "calabi/vec.hpp"

namespace calabi {

struct Parameterization {
    std::vector<Vec2> uv;       // metric units; see normalize_uv for export
    std::vector<bool> embedded;
    // For cut meshes: per-vertex map back to the original vertex.
    std::vector<int> seam_to_original;
    // Worst relative |planar distance - metric length| over all edges;
    // nonzero residual curvature shows up here on cycle-closing edges.
    double max_edge_error = 0.0;
};

// Intersection of circles C(pi, l_ik) and C(pj, l_jk) on the counterclockwise
// side of pi -> pj. Throws when the circles do not meet.
Vec2 third_vertex(Vec2 pi, Vec2 pj, double l_ik, double l_jk);

// Lays out a flat metric in the plane. Face 0 is the root (first vertex at
// the origin, second on the positive x axis, third above); the remaining
// faces follow in breadth-first order over face adjacency, and vertices keep
// their first placement. Requires a topological disk.
Parameterization embed(const Mesh&, const std::vector<double>& lengths);

struct UvNormalization {
    Vec2 offset;  // subtracted first
    double scale; // then multiplied, mapping into [0,1]^2
};

// Translate the bounding box to the origin and scale uniformly into [0,1]^2.
UvNormalization normalize_uv(std::vector<Vec2>& uv);

} // namespace calabi
