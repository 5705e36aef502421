#include "calabi/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "calabi/error.hpp"
#include "calabi/packing_metric.hpp"

namespace calabi {

Vec2 third_vertex(Vec2 pi, Vec2 pj, double l_ik, double l_jk) {
    Vec2 base = pj - pi;
    double d2 = dot(base, base);
    if (!(d2 > 0.0)) fail("third_vertex: base points coincide");
    double d = std::sqrt(d2);
    double x = (d2 + l_ik * l_ik - l_jk * l_jk) / (2.0 * d);
    double y2 = l_ik * l_ik - x * x;
    double tol = 1e-12 * std::max({d2, l_ik * l_ik, l_jk * l_jk});
    if (y2 < -tol)
        fail("third_vertex: circles with radii ", l_ik, " and ", l_jk,
             " at base distance ", d, " do not intersect");
    double y = std::sqrt(std::max(y2, 0.0));
    Vec2 t{base.x / d, base.y / d};
    return {pi.x + x * t.x - y * t.y, pi.y + x * t.y + y * t.x};
}

Parameterization embed(const Mesh& mesh, const std::vector<double>& lengths) {
    const int chi = mesh.n_vertices() - mesh.n_edges() + mesh.n_faces();
    if (chi != 1 || boundary_loops(mesh).size() != 1)
        fail("embed: input is not a topological disk (chi=", chi, ")");
    auto violations = check_triangle_inequalities(mesh, lengths);
    if (!violations.empty())
        fail("embed: face ", violations.front(), " violates the triangle inequality");

    Parameterization param;
    param.uv.assign(mesh.n_vertices(), Vec2{});
    param.embedded.assign(mesh.n_vertices(), false);

    const auto& root = mesh.faces[0];
    const auto& rfe = mesh.face_edges[0];
    param.uv[root[0]] = {0.0, 0.0};
    param.uv[root[1]] = {lengths[rfe[0]], 0.0};
    param.uv[root[2]] = third_vertex(param.uv[root[0]], param.uv[root[1]], lengths[rfe[2]],
                                     lengths[rfe[1]]);
    param.embedded[root[0]] = param.embedded[root[1]] = param.embedded[root[2]] = true;

    std::vector<bool> visited(mesh.n_faces(), false);
    visited[0] = true;
    std::queue<int> queue;
    queue.push(0);
    int reached = 1;
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop();

        const auto& fc = mesh.faces[f];
        int unplaced = -1;
        for (int c = 0; c < 3; ++c) {
            if (!param.embedded[fc[c]]) {
                unplaced = c;
                break;
            }
        }
        if (unplaced != -1) {
            // (a, b, k) counterclockwise with k the missing corner.
            int a = fc[(unplaced + 1) % 3];
            int b = fc[(unplaced + 2) % 3];
            int k = fc[unplaced];
            double l_ak = lengths[mesh.edge_between(a, k)];
            double l_bk = lengths[mesh.edge_between(b, k)];
            try {
                param.uv[k] = third_vertex(param.uv[a], param.uv[b], l_ak, l_bk);
            } catch (const Error& e) {
                fail("embed: face ", f, ": ", e.what());
            }
            param.embedded[k] = true;
        }

        int neighbors[3] = {-1, -1, -1};
        for (int c = 0; c < 3; ++c) {
            int e = mesh.face_edges[f][c];
            int g = mesh.edge_faces[e][0] == f ? mesh.edge_faces[e][1] : mesh.edge_faces[e][0];
            neighbors[c] = g;
        }
        std::sort(std::begin(neighbors), std::end(neighbors));
        for (int g : neighbors) {
            if (g == -1 || visited[g]) continue;
            visited[g] = true;
            ++reached;
            queue.push(g);
        }
    }
    if (reached != mesh.n_faces())
        fail("embed: breadth-first layout reached ", reached, " of ", mesh.n_faces(),
             " faces; input is not a single disk");

    for (int e = 0; e < mesh.n_edges(); ++e) {
        double planar = norm(param.uv[mesh.edges[e][0]] - param.uv[mesh.edges[e][1]]);
        param.max_edge_error =
            std::max(param.max_edge_error, std::abs(planar - lengths[e]) / lengths[e]);
    }
    return param;
}

UvNormalization normalize_uv(std::vector<Vec2>& uv) {
    if (uv.empty()) return {{0.0, 0.0}, 1.0};
    Vec2 lo = uv[0], hi = uv[0];
    for (const auto& p : uv) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    double extent = std::max(hi.x - lo.x, hi.y - lo.y);
    double scale = extent > 0.0 ? 1.0 / extent : 1.0;
    for (auto& p : uv) p = scale * (p - lo);
    return {lo, scale};
}

} // namespace calabi
