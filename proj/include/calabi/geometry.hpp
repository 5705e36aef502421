#pragma once
#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "calabi/mesh.hpp"
#include "calabi/packing_metric.hpp"
#include "calabi/vec.hpp"

namespace calabi {

// Corner angles per face; slot c holds the angle at faces[f][c].
struct CornerAngles {
    std::vector<std::array<double, 3>> angle;
};

// Cosine law per corner; the arccos argument is clamped to [-1, 1]. Throws if
// a face violates the triangle inequality.
CornerAngles corner_angles(const Mesh&, const std::vector<double>& lengths);

// Angle deficit: 2*pi minus the incident angle sum at interior vertices, pi
// minus the sum at boundary vertices. Sums to 2*pi*chi over the mesh.
std::vector<double> vertex_curvatures(const Mesh&, const CornerAngles&);

struct CurvatureState {
    std::vector<double> current;
    std::vector<double> target;
};

// Symmetric vertex-by-vertex operator stored as one weight per edge plus a
// diagonal: entry(i,j) = -edge_weight[e] for an edge e = (i,j), entry(i,i) =
// diagonal[i], zero otherwise.
struct VertexMatrix {
    std::vector<double> edge_weight;
    std::vector<double> diagonal;
};

std::vector<double> apply(const Mesh&, const VertexMatrix&, std::span<const double> x);
double matrix_entry(const Mesh&, const VertexMatrix&, int i, int j);
// Coordinate dump `i j value`, 0-based, sorted by (i, j).
void write_matrix_coo(std::ostream&, const Mesh&, const VertexMatrix&);

// Jacobian of the vertex curvatures with respect to the log radii, assembled
// analytically per face. The stored edge weight equals the dual/primal length
// ratio of that edge (positive when the power centers lie inside their
// faces), so entry(i,j) = dK_i/du_j = -weight and the diagonal is the row-sum
// complement: column sums vanish on closed meshes. Throws on triangles with a
// corner angle within 1e-12 of 0 or pi.
VertexMatrix dual_laplacian(const Mesh&, const PackingMetric&, const std::vector<double>& lengths,
                            const CornerAngles&);

// Cotangent operator in the same storage convention: weight(e) =
// (cot(opposite angles))/2 summed over adjacent faces. Equals the dual
// Laplacian when all radii coincide.
VertexMatrix cotangent_laplacian(const Mesh&, const std::vector<double>& lengths);

// Radical center of the three vertex circles: the point whose power
// |p - v|^2 - r^2 agrees for all three. Local face frame: corner 0 at the
// origin, corner 1 at (l01, 0), corner 2 above the axis.
Vec2 power_center(double l01, double l12, double l20, double r0, double r1, double r2);

// Per edge, the signed sum over adjacent faces of the distance from the
// face's power center to the edge line (positive on the face's interior
// side). Dividing by the primal length reproduces the dual-Laplacian weight.
std::vector<double> dual_edge_lengths(const Mesh&, const PackingMetric&,
                                      const std::vector<double>& lengths);

} // namespace calabi
