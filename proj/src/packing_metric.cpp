#include "calabi/packing_metric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "calabi/error.hpp"

namespace calabi {

double PackingMetric::radius(int v) const { return std::exp(u[v]); }

double PackingMetric::length_coefficient(int e) const {
    return scheme == PackingScheme::Thurston ? std::cos(edge_weight[e]) : edge_weight[e];
}

namespace {

PackingMetric from_radii(const Mesh& mesh, PackingScheme scheme, std::vector<double> radii,
                         std::vector<double> weights) {
    if (static_cast<int>(radii.size()) != mesh.n_vertices())
        fail("metric: expected ", mesh.n_vertices(), " radii, got ", radii.size());
    if (static_cast<int>(weights.size()) != mesh.n_edges())
        fail("metric: expected ", mesh.n_edges(), " edge weights, got ", weights.size());
    PackingMetric m;
    m.scheme = scheme;
    m.u.resize(radii.size());
    for (std::size_t v = 0; v < radii.size(); ++v) {
        if (!(radii[v] > 0.0)) fail("metric: radius of vertex ", v, " must be positive");
        m.u[v] = std::log(radii[v]);
    }
    m.edge_weight = std::move(weights);
    return m;
}

} // namespace

PackingMetric inversive_metric(const Mesh& mesh, std::vector<double> radii,
                               std::vector<double> inversive) {
    return from_radii(mesh, PackingScheme::InversiveDistance, std::move(radii),
                      std::move(inversive));
}

PackingMetric thurston_metric(const Mesh& mesh, std::vector<double> radii,
                              std::vector<double> phi) {
    for (std::size_t e = 0; e < phi.size(); ++e) {
        if (!(phi[e] >= 0.0 && phi[e] <= std::numbers::pi / 2))
            fail("thurston metric: Phi of edge ", e, " outside [0, pi/2]");
    }
    return from_radii(mesh, PackingScheme::Thurston, std::move(radii), std::move(phi));
}

PackingMetric initial_inversive_metric(const Mesh& mesh) {
    const auto& d = mesh.original_lengths;
    std::vector<double> r(mesh.n_vertices(), std::numeric_limits<double>::infinity());
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const auto& fe = mesh.face_edges[f]; // (v0v1, v1v2, v2v0)
        for (int c = 0; c < 3; ++c) {
            // corner c: adjacent edges (c-1,c) and (c,c+1), opposite (c+1,c+2)
            double rc = (d[fe[(c + 2) % 3]] + d[fe[c]] - d[fe[(c + 1) % 3]]) / 2.0;
            if (!(rc > 0.0))
                fail("face ", f, " has degenerate input lengths (corner radius ", rc,
                     " at vertex ", mesh.faces[f][c], ")");
            r[mesh.faces[f][c]] = std::min(r[mesh.faces[f][c]], rc);
        }
    }

    std::vector<double> inv(mesh.n_edges());
    for (int e = 0; e < mesh.n_edges(); ++e) {
        double ri = r[mesh.edges[e][0]], rj = r[mesh.edges[e][1]];
        inv[e] = (d[e] * d[e] - ri * ri - rj * rj) / (2.0 * ri * rj);
    }
    return inversive_metric(mesh, std::move(r), std::move(inv));
}

bool try_edge_lengths(const Mesh& mesh, const PackingMetric& metric, std::vector<double>& out,
                      int* bad_edge) {
    const int ne = mesh.n_edges();
    out.resize(ne);
    for (int e = 0; e < ne; ++e) {
        double ri = metric.radius(mesh.edges[e][0]);
        double rj = metric.radius(mesh.edges[e][1]);
        double radicand = ri * ri + rj * rj + 2.0 * ri * rj * metric.length_coefficient(e);
        if (!(radicand > 0.0) || !std::isfinite(radicand)) {
            if (bad_edge) *bad_edge = e;
            return false;
        }
        out[e] = std::sqrt(radicand);
    }
    return true;
}

std::vector<double> edge_lengths(const Mesh& mesh, const PackingMetric& metric) {
    std::vector<double> lengths;
    int bad = -1;
    if (!try_edge_lengths(mesh, metric, lengths, &bad))
        fail("metric degenerate on edge (", mesh.edges[bad][0], ",", mesh.edges[bad][1],
             "): non-positive squared length");
    return lengths;
}

std::vector<int> check_triangle_inequalities(const Mesh& mesh,
                                             const std::vector<double>& lengths) {
    std::vector<int> violating;
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const auto& fe = mesh.face_edges[f];
        double a = lengths[fe[0]], b = lengths[fe[1]], c = lengths[fe[2]];
        if (!(a + b > c && b + c > a && c + a > b)) violating.push_back(f);
    }
    return violating;
}

void write_metric_edges_csv(std::ostream& os, const Mesh& mesh, const PackingMetric& metric,
                            const std::vector<double>& lengths) {
    os << "edge_v0,edge_v1,weight,length\n";
    char buf[96];
    for (int e = 0; e < mesh.n_edges(); ++e) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", mesh.edges[e][0], mesh.edges[e][1],
                      metric.edge_weight[e], lengths[e]);
        os << buf;
    }
}

void write_metric_vertices_csv(std::ostream& os, const Mesh& mesh, const PackingMetric& metric) {
    os << "vertex,u,r\n";
    char buf[96];
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", v, metric.u[v], metric.radius(v));
        os << buf;
    }
}

} // namespace calabi
