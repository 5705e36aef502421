#pragma once
#include <iosfwd>
#include <vector>

#include "calabi/mesh.hpp"

namespace calabi {

enum class PackingScheme { InversiveDistance, Thurston };

// Circle packing metric: one log radius per vertex plus one conformal-class
// datum per edge (inversive distance I, or intersection angle Phi in
// [0, pi/2]). The edge data stays fixed while u evolves; every edge length is
// derived as l^2 = r_i^2 + r_j^2 + 2 r_i r_j w with w = I or cos(Phi).
struct PackingMetric {
    PackingScheme scheme = PackingScheme::InversiveDistance;
    std::vector<double> u;           // log radius per vertex
    std::vector<double> edge_weight; // I_ij or Phi_ij per edge

    double radius(int v) const;
    // Coefficient w in the length law.
    double length_coefficient(int e) const;
};

PackingMetric inversive_metric(const Mesh&, std::vector<double> radii,
                               std::vector<double> inversive);
// Validates Phi in [0, pi/2].
PackingMetric thurston_metric(const Mesh&, std::vector<double> radii, std::vector<double> phi);

// Initial inversive-distance packing: per-corner tangential radii
// (d_ki + d_ij - d_jk)/2, each vertex takes the minimum over incident faces,
// and inversive distances are chosen so the packing reproduces the original
// edge lengths exactly.
PackingMetric initial_inversive_metric(const Mesh&);

// False when some radicand is non-positive or non-finite (bad_edge set).
bool try_edge_lengths(const Mesh&, const PackingMetric&, std::vector<double>& out,
                      int* bad_edge = nullptr);
std::vector<double> edge_lengths(const Mesh&, const PackingMetric&);

// Faces violating a strict triangle inequality. Empty means all valid.
std::vector<int> check_triangle_inequalities(const Mesh&, const std::vector<double>& lengths);

// Debug dumps: `edge_v0,edge_v1,weight,length` and `vertex,u,r`.
void write_metric_edges_csv(std::ostream&, const Mesh&, const PackingMetric&,
                            const std::vector<double>& lengths);
void write_metric_vertices_csv(std::ostream&, const Mesh&, const PackingMetric&);

} // namespace calabi
