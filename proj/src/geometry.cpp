#include "calabi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "calabi/error.hpp"

namespace calabi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateAngle = 1e-12;

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

// Derivative of the length of edge e with respect to the log radius of its
// endpoint s: (r_s^2 + r_s r_t w) / l.
double dlength_du(const Mesh& mesh, const PackingMetric& metric,
                  const std::vector<double>& lengths, int e, int s) {
    int t = mesh.other_endpoint(e, s);
    double rs = metric.radius(s), rt = metric.radius(t);
    return (rs * rs + rs * rt * metric.length_coefficient(e)) / lengths[e];
}

} // namespace

CornerAngles corner_angles(const Mesh& mesh, const std::vector<double>& lengths) {
    CornerAngles ca;
    ca.angle.resize(mesh.n_faces());
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const auto& fe = mesh.face_edges[f];
        double l01 = lengths[fe[0]], l12 = lengths[fe[1]], l20 = lengths[fe[2]];
        if (!(l01 + l12 > l20 && l12 + l20 > l01 && l20 + l01 > l12))
            fail("face ", f, " violates the triangle inequality (", l01, ", ", l12, ", ", l20,
                 ")");
        ca.angle[f][0] = clamped_acos((l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01 * l20));
        ca.angle[f][1] = clamped_acos((l01 * l01 + l12 * l12 - l20 * l20) / (2.0 * l01 * l12));
        ca.angle[f][2] = clamped_acos((l12 * l12 + l20 * l20 - l01 * l01) / (2.0 * l12 * l20));
    }
    return ca;
}

std::vector<double> vertex_curvatures(const Mesh& mesh, const CornerAngles& angles) {
    std::vector<double> k(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v)
        k[v] = mesh.vertex_is_boundary[v] ? kPi : 2.0 * kPi;
    for (int f = 0; f < mesh.n_faces(); ++f) {
        for (int c = 0; c < 3; ++c) k[mesh.faces[f][c]] -= angles.angle[f][c];
    }
    return k;
}

std::vector<double> apply(const Mesh& mesh, const VertexMatrix& m, std::span<const double> x) {
    std::vector<double> y(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) y[v] = m.diagonal[v] * x[v];
    for (int e = 0; e < mesh.n_edges(); ++e) {
        int a = mesh.edges[e][0], b = mesh.edges[e][1];
        y[a] -= m.edge_weight[e] * x[b];
        y[b] -= m.edge_weight[e] * x[a];
    }
    return y;
}

double matrix_entry(const Mesh& mesh, const VertexMatrix& m, int i, int j) {
    if (i == j) return m.diagonal[i];
    int e = mesh.edge_between(i, j);
    return e == -1 ? 0.0 : -m.edge_weight[e];
}

void write_matrix_coo(std::ostream& os, const Mesh& mesh, const VertexMatrix& m) {
    char buf[96];
    for (int i = 0; i < mesh.n_vertices(); ++i) {
        // edges_around is sorted by opposite vertex, so rows come out ordered
        // once the diagonal is merged in.
        bool diag_done = false;
        for (int e : mesh.edges_around(i)) {
            int j = mesh.other_endpoint(e, i);
            if (!diag_done && i < j) {
                std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, i, m.diagonal[i]);
                os << buf;
                diag_done = true;
            }
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, j, -m.edge_weight[e]);
            os << buf;
        }
        if (!diag_done) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, i, m.diagonal[i]);
            os << buf;
        }
    }
}

VertexMatrix dual_laplacian(const Mesh& mesh, const PackingMetric& metric,
                            const std::vector<double>& lengths, const CornerAngles& angles) {
    VertexMatrix m;
    m.edge_weight.assign(mesh.n_edges(), 0.0);
    m.diagonal.assign(mesh.n_vertices(), 0.0);

    for (int f = 0; f < mesh.n_faces(); ++f) {
        for (int c = 0; c < 3; ++c) {
            double th = angles.angle[f][c];
            if (th < kDegenerateAngle || th > kPi - kDegenerateAngle)
                fail("face ", f, " is numerically degenerate (corner angle ", th, ")");
        }
        const auto& fe = mesh.face_edges[f];
        // Corner pairs (p, q) with shared edge e_pq, opposite corner o:
        // dtheta_p/du_q = a / (b c sin th_p) * (da/du_q - cos th_q * dc/du_q)
        // with a = l_qo, b = l_po, c = l_pq. Symmetric in p and q.
        for (int c = 0; c < 3; ++c) {
            int p = c, q = (c + 1) % 3, o = (c + 2) % 3;
            int e_pq = fe[c], e_qo = fe[q], e_po = fe[o];
            int vq = mesh.faces[f][q];
            double a = lengths[e_qo], b = lengths[e_po], cc = lengths[e_pq];
            double da = dlength_du(mesh, metric, lengths, e_qo, vq);
            double dc = dlength_du(mesh, metric, lengths, e_pq, vq);
            double w = a / (b * cc * std::sin(angles.angle[f][p])) *
                       (da - std::cos(angles.angle[f][q]) * dc);
            m.edge_weight[e_pq] += w;
        }
    }
    for (int e = 0; e < mesh.n_edges(); ++e) {
        m.diagonal[mesh.edges[e][0]] += m.edge_weight[e];
        m.diagonal[mesh.edges[e][1]] += m.edge_weight[e];
    }
    return m;
}

VertexMatrix cotangent_laplacian(const Mesh& mesh, const std::vector<double>& lengths) {
    CornerAngles angles = corner_angles(mesh, lengths);
    VertexMatrix m;
    m.edge_weight.assign(mesh.n_edges(), 0.0);
    m.diagonal.assign(mesh.n_vertices(), 0.0);
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const auto& fe = mesh.face_edges[f];
        for (int c = 0; c < 3; ++c) {
            double opposite = angles.angle[f][(c + 2) % 3];
            m.edge_weight[fe[c]] += 0.5 / std::tan(opposite);
        }
    }
    for (int e = 0; e < mesh.n_edges(); ++e) {
        m.diagonal[mesh.edges[e][0]] += m.edge_weight[e];
        m.diagonal[mesh.edges[e][1]] += m.edge_weight[e];
    }
    return m;
}

Vec2 power_center(double l01, double l12, double l20, double r0, double r1, double r2) {
    if (!(l01 + l12 > l20 && l12 + l20 > l01 && l20 + l01 > l12))
        fail("power_center: lengths (", l01, ", ", l12, ", ", l20,
             ") violate the triangle inequality");
    double x2 = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
    double y2sq = l20 * l20 - x2 * x2;
    if (!(y2sq > 0.0)) fail("power_center: degenerate face");
    double y2 = std::sqrt(y2sq);
    // Equal powers against circles 0 and 1 give the x coordinate; against
    // circle 2 the y coordinate.
    double px = (l01 * l01 + r0 * r0 - r1 * r1) / (2.0 * l01);
    double py = (l20 * l20 + r0 * r0 - r2 * r2 - 2.0 * px * x2) / (2.0 * y2);
    return {px, py};
}

std::vector<double> dual_edge_lengths(const Mesh& mesh, const PackingMetric& metric,
                                      const std::vector<double>& lengths) {
    std::vector<double> dual(mesh.n_edges(), 0.0);
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const auto& fe = mesh.face_edges[f];
        const auto& fc = mesh.faces[f];
        double l01 = lengths[fe[0]], l12 = lengths[fe[1]], l20 = lengths[fe[2]];
        double r0 = metric.radius(fc[0]), r1 = metric.radius(fc[1]), r2 = metric.radius(fc[2]);
        Vec2 pc = power_center(l01, l12, l20, r0, r1, r2);
        double x2 = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
        double y2 = std::sqrt(l20 * l20 - x2 * x2);
        Vec2 p0{0.0, 0.0}, p1{l01, 0.0}, p2{x2, y2};
        // Signed distance to each edge line, positive toward the interior;
        // the local frame is counterclockwise so face order gives the sign.
        dual[fe[0]] += cross(p1 - p0, pc - p0) / l01;
        dual[fe[1]] += cross(p2 - p1, pc - p1) / l12;
        dual[fe[2]] += cross(p0 - p2, pc - p2) / l20;
    }
    return dual;
}

} // namespace calabi
