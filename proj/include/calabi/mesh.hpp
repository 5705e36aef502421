#pragma once
#include <array>
#include <span>
#include <vector>

#include "calabi/vec.hpp"

namespace calabi {

// Indexed triangle mesh with derived connectivity. Faces are counterclockwise
// vertex triples; edges are derived and stored with sorted endpoints.
// Immutable after build_mesh, safe to share read-only across threads.
struct Mesh {
    std::vector<Vec3> positions;
    std::vector<std::array<int, 3>> faces;

    // Derived by build_mesh.
    std::vector<std::array<int, 2>> edges;      // endpoints, first < second
    std::vector<double> original_lengths;       // per edge, from positions
    std::vector<std::array<int, 2>> edge_faces; // adjacent faces, -1 when absent
    std::vector<std::array<int, 3>> face_edges; // edge ids for (v0v1, v1v2, v2v0)
    std::vector<bool> vertex_is_boundary;
    std::vector<bool> edge_is_boundary;

    // CSR adjacency: incident edge ids per vertex, sorted by opposite vertex.
    std::vector<int> vertex_edge_offset;
    std::vector<int> vertex_edge_list;

    int n_vertices() const { return static_cast<int>(positions.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }
    int n_faces() const { return static_cast<int>(faces.size()); }

    std::span<const int> edges_around(int v) const {
        return {vertex_edge_list.data() + vertex_edge_offset[v],
                vertex_edge_list.data() + vertex_edge_offset[v + 1]};
    }
    int other_endpoint(int edge, int v) const {
        return edges[edge][0] == v ? edges[edge][1] : edges[edge][0];
    }
    // Edge joining a and b, or -1 if they are not adjacent.
    int edge_between(int a, int b) const;
};

// Validates and derives connectivity. Rejects out-of-range or repeated face
// indices, zero-length edges, edges with more than two faces, inconsistent
// orientation, non-manifold vertex fans, and unreferenced vertices.
Mesh build_mesh(std::vector<Vec3> positions, std::vector<std::array<int, 3>> faces);

struct TopologyReport {
    int vertex_count{};
    int edge_count{};
    int face_count{};
    int euler_characteristic{}; // V - E + F
    int genus{};
    int boundary_loop_count{};
    bool closed{};
};

TopologyReport topology(const Mesh& mesh);

// Ordered boundary loops, each following the boundary halfedge direction of
// the incident faces (surface on the left).
std::vector<std::vector<int>> boundary_loops(const Mesh& mesh);

// Incident faces per vertex in rotational order around the vertex; for
// boundary vertices the walk starts at one boundary side and ends at the
// other. Also used by build_mesh to reject non-manifold fans.
std::vector<std::vector<int>> vertex_face_fans(const Mesh& mesh);

} // namespace calabi
