#include "calabi/cut.hpp"

#include <queue>

#include "calabi/error.hpp"

namespace calabi {

namespace {

std::vector<bool> primal_spanning_tree(const Mesh& mesh) {
    std::vector<bool> in_tree(mesh.n_edges(), false);
    std::vector<bool> seen(mesh.n_vertices(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : mesh.edges_around(v)) {
            int w = mesh.other_endpoint(e, v);
            if (seen[w]) continue;
            seen[w] = true;
            in_tree[e] = true;
            q.push(w);
        }
    }
    for (bool s : seen)
        if (!s) fail("cut_to_disk: mesh is not connected");
    return in_tree;
}

// Marks edges crossed by a BFS dual spanning tree that avoids primal tree
// edges. Every face is reachable on a closed connected mesh.
std::vector<bool> dual_tree_crossings(const Mesh& mesh, const std::vector<bool>& primal_tree) {
    std::vector<bool> crossed(mesh.n_edges(), false);
    std::vector<bool> seen(mesh.n_faces(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int e : mesh.face_edges[f]) {
            if (primal_tree[e] || crossed[e]) continue;
            int g = mesh.edge_faces[e][0] == f ? mesh.edge_faces[e][1] : mesh.edge_faces[e][0];
            if (g == -1 || seen[g]) continue;
            seen[g] = true;
            crossed[e] = true;
            q.push(g);
        }
    }
    return crossed;
}

} // namespace

CutMesh cut_to_disk(const Mesh& mesh) {
    for (bool b : mesh.edge_is_boundary)
        if (b) fail("cut_to_disk: mesh already has boundary, nothing to cut");
    const int chi = mesh.n_vertices() - mesh.n_edges() + mesh.n_faces();
    if (chi == 2) fail("cut_to_disk: sphere topology is unsupported");
    if (chi > 0 || chi % 2 != 0) fail("cut_to_disk: unexpected Euler characteristic ", chi);

    auto primal = primal_spanning_tree(mesh);
    auto crossed = dual_tree_crossings(mesh, primal);

    // Cut graph: primal tree plus leftover edges, pruned of dangling branches.
    std::vector<bool> cut(mesh.n_edges());
    for (int e = 0; e < mesh.n_edges(); ++e) cut[e] = !crossed[e];

    std::vector<int> cut_degree(mesh.n_vertices(), 0);
    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (!cut[e]) continue;
        ++cut_degree[mesh.edges[e][0]];
        ++cut_degree[mesh.edges[e][1]];
    }
    std::queue<int> leaves;
    for (int v = 0; v < mesh.n_vertices(); ++v)
        if (cut_degree[v] == 1) leaves.push(v);
    while (!leaves.empty()) {
        int v = leaves.front();
        leaves.pop();
        if (cut_degree[v] != 1) continue;
        for (int e : mesh.edges_around(v)) {
            if (!cut[e]) continue;
            cut[e] = false;
            --cut_degree[v];
            int w = mesh.other_endpoint(e, v);
            if (--cut_degree[w] == 1) leaves.push(w);
            break;
        }
    }

    // Slice: duplicate every cut vertex once per fan sector. Sector borders
    // are the cut edges; the crossing between consecutive fan faces fan[t],
    // fan[t+1] is the edge to the predecessor corner of fan[t].
    auto fans = vertex_face_fans(mesh);
    std::vector<Vec3> positions = mesh.positions;
    auto faces = mesh.faces;
    std::vector<int> source(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) source[v] = v;

    struct Reassign {
        int face;
        int corner;
        int new_vertex;
    };
    std::vector<Reassign> reassignments;

    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (cut_degree[v] == 0) continue;
        const auto& fan = fans[v];
        const int deg = static_cast<int>(fan.size());
        std::vector<int> crossing(deg);
        for (int t = 0; t < deg; ++t) {
            const auto& fc = mesh.faces[fan[t]];
            int c = fc[0] == v ? 0 : (fc[1] == v ? 1 : 2);
            crossing[t] = mesh.edge_between(v, fc[(c + 2) % 3]);
        }
        int first_break = -1;
        for (int t = 0; t < deg; ++t) {
            if (cut[crossing[t]]) {
                first_break = t;
                break;
            }
        }
        // Walk sectors starting just after the first cut crossing; the first
        // sector keeps the original vertex id, later sectors get copies.
        int sector_vertex = v;
        for (int k = 0; k < deg; ++k) {
            int t = (first_break + 1 + k) % deg;
            if (k > 0 && cut[crossing[(t + deg - 1) % deg]]) {
                sector_vertex = static_cast<int>(positions.size());
                positions.push_back(mesh.positions[v]);
                source.push_back(v);
            }
            if (sector_vertex != v) {
                const auto& fc = mesh.faces[fan[t]];
                int c = fc[0] == v ? 0 : (fc[1] == v ? 1 : 2);
                reassignments.push_back({fan[t], c, sector_vertex});
            }
        }
    }

    for (const auto& r : reassignments) faces[r.face][r.corner] = r.new_vertex;

    CutMesh out;
    out.mesh = build_mesh(std::move(positions), std::move(faces));
    out.source_vertex = std::move(source);

    const int cut_chi = out.mesh.n_vertices() - out.mesh.n_edges() + out.mesh.n_faces();
    const auto loops = boundary_loops(out.mesh);
    if (cut_chi != 1 || loops.size() != 1)
        fail("cut_to_disk: cut produced chi=", cut_chi, " with ", loops.size(),
             " boundary loops instead of a disk");
    return out;
}

PackingMetric metric_for_cut(const CutMesh& cut, const Mesh& original,
                             const PackingMetric& metric) {
    PackingMetric out;
    out.scheme = metric.scheme;
    out.u.resize(cut.mesh.n_vertices());
    for (int v = 0; v < cut.mesh.n_vertices(); ++v) out.u[v] = metric.u[cut.source_vertex[v]];
    out.edge_weight.resize(cut.mesh.n_edges());
    for (int e = 0; e < cut.mesh.n_edges(); ++e) {
        int a = cut.source_vertex[cut.mesh.edges[e][0]];
        int b = cut.source_vertex[cut.mesh.edges[e][1]];
        int orig = original.edge_between(a, b);
        if (orig == -1) fail("metric_for_cut: edge (", a, ",", b, ") missing in original mesh");
        out.edge_weight[e] = metric.edge_weight[orig];
    }
    return out;
}

} // namespace calabi
