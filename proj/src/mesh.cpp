#include "calabi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "calabi/error.hpp"

namespace calabi {

int Mesh::edge_between(int a, int b) const {
    for (int e : edges_around(a)) {
        if (other_endpoint(e, a) == b) return e;
    }
    return -1;
}

namespace {

// Position of vertex v within face f (0..2), or -1.
int corner_of(const std::array<int, 3>& face, int v) {
    for (int c = 0; c < 3; ++c)
        if (face[c] == v) return c;
    return -1;
}

} // namespace

Mesh build_mesh(std::vector<Vec3> positions, std::vector<std::array<int, 3>> faces) {
    Mesh m;
    m.positions = std::move(positions);
    m.faces = std::move(faces);
    const int nv = m.n_vertices();
    const int nf = m.n_faces();

    for (int f = 0; f < nf; ++f) {
        const auto& fc = m.faces[f];
        for (int c = 0; c < 3; ++c) {
            if (fc[c] < 0 || fc[c] >= nv)
                fail("face ", f, ": vertex index ", fc[c], " out of range");
        }
        if (fc[0] == fc[1] || fc[1] == fc[2] || fc[2] == fc[0])
            fail("face ", f, ": repeated vertex index");
    }

    // Edge table keyed by sorted endpoints; track directed halfedges so that
    // an edge shared by two faces must be traversed in opposite directions.
    std::map<std::pair<int, int>, int> edge_id;
    m.face_edges.assign(nf, {-1, -1, -1});
    std::vector<std::array<int, 2>> edge_dir_count; // (a<b dir, b>a dir) uses
    for (int f = 0; f < nf; ++f) {
        for (int c = 0; c < 3; ++c) {
            int a = m.faces[f][c];
            int b = m.faces[f][(c + 1) % 3];
            auto key = std::minmax(a, b);
            auto [it, inserted] = edge_id.try_emplace({key.first, key.second},
                                                      static_cast<int>(m.edges.size()));
            if (inserted) {
                m.edges.push_back({key.first, key.second});
                m.edge_faces.push_back({-1, -1});
                edge_dir_count.push_back({0, 0});
            }
            int e = it->second;
            if (m.edge_faces[e][0] == -1)
                m.edge_faces[e][0] = f;
            else if (m.edge_faces[e][1] == -1)
                m.edge_faces[e][1] = f;
            else
                fail("non-manifold: edge (", key.first, ",", key.second,
                     ") borders more than two faces");
            int dir = (a < b) ? 0 : 1;
            if (++edge_dir_count[e][dir] > 1)
                fail("non-manifold or inconsistently oriented: directed edge (", a, ",", b,
                     ") appears twice");
            m.face_edges[f][c] = e;
        }
    }

    const int ne = m.n_edges();
    m.original_lengths.resize(ne);
    for (int e = 0; e < ne; ++e) {
        double len = norm(m.positions[m.edges[e][0]] - m.positions[m.edges[e][1]]);
        if (!(len > 0.0) || !std::isfinite(len))
            fail("degenerate edge (", m.edges[e][0], ",", m.edges[e][1],
                 "): length must be positive");
        m.original_lengths[e] = len;
    }

    m.edge_is_boundary.assign(ne, false);
    m.vertex_is_boundary.assign(nv, false);
    for (int e = 0; e < ne; ++e) {
        if (m.edge_faces[e][1] == -1) {
            m.edge_is_boundary[e] = true;
            m.vertex_is_boundary[m.edges[e][0]] = true;
            m.vertex_is_boundary[m.edges[e][1]] = true;
        }
    }

    // CSR vertex -> incident edges, sorted by the opposite vertex id.
    std::vector<int> degree(nv, 0);
    for (const auto& e : m.edges) {
        ++degree[e[0]];
        ++degree[e[1]];
    }
    m.vertex_edge_offset.assign(nv + 1, 0);
    for (int v = 0; v < nv; ++v) m.vertex_edge_offset[v + 1] = m.vertex_edge_offset[v] + degree[v];
    m.vertex_edge_list.resize(m.vertex_edge_offset[nv]);
    {
        std::vector<int> cursor(m.vertex_edge_offset.begin(), m.vertex_edge_offset.end() - 1);
        for (int e = 0; e < ne; ++e) {
            m.vertex_edge_list[cursor[m.edges[e][0]]++] = e;
            m.vertex_edge_list[cursor[m.edges[e][1]]++] = e;
        }
    }
    for (int v = 0; v < nv; ++v) {
        auto begin = m.vertex_edge_list.begin() + m.vertex_edge_offset[v];
        auto end = m.vertex_edge_list.begin() + m.vertex_edge_offset[v + 1];
        std::sort(begin, end,
                  [&](int a, int b) { return m.other_endpoint(a, v) < m.other_endpoint(b, v); });
    }

    for (int v = 0; v < nv; ++v) {
        if (degree[v] == 0) fail("vertex ", v, " is not referenced by any face");
    }

    // A manifold vertex has all incident faces in one fan and 0 or 2 incident
    // boundary edges; vertex_face_fans verifies the fan is complete.
    for (int v = 0; v < nv; ++v) {
        int boundary_edges = 0;
        for (int e : m.edges_around(v))
            if (m.edge_is_boundary[e]) ++boundary_edges;
        if (boundary_edges != 0 && boundary_edges != 2)
            fail("non-manifold vertex ", v, ": ", boundary_edges, " incident boundary edges");
    }
    vertex_face_fans(m);

    return m;
}

std::vector<std::vector<int>> vertex_face_fans(const Mesh& mesh) {
    const int nv = mesh.n_vertices();
    std::vector<std::vector<int>> incident(nv);
    for (int f = 0; f < mesh.n_faces(); ++f)
        for (int v : mesh.faces[f]) incident[v].push_back(f);

    std::vector<std::vector<int>> fans(nv);
    for (int v = 0; v < nv; ++v) {
        if (incident[v].empty()) continue;
        // Walking counterclockwise crosses the edge to the predecessor of v;
        // start from the face whose successor edge (v, succ) is boundary, or
        // anywhere on an interior fan.
        int start = incident[v][0];
        for (int f : incident[v]) {
            int c = corner_of(mesh.faces[f], v);
            int succ = mesh.faces[f][(c + 1) % 3];
            int e = mesh.edge_between(v, succ);
            if (mesh.edge_is_boundary[e]) start = f;
        }
        auto& fan = fans[v];
        int f = start;
        while (true) {
            fan.push_back(f);
            int c = corner_of(mesh.faces[f], v);
            int pred = mesh.faces[f][(c + 2) % 3];
            int e = mesh.edge_between(v, pred);
            int next = mesh.edge_faces[e][0] == f ? mesh.edge_faces[e][1] : mesh.edge_faces[e][0];
            if (next == -1 || next == start) break;
            f = next;
        }
        if (fan.size() != incident[v].size())
            fail("non-manifold vertex ", v, ": incident faces do not form a single fan");
    }
    return fans;
}

std::vector<std::vector<int>> boundary_loops(const Mesh& mesh) {
    const int nv = mesh.n_vertices();
    // Boundary halfedges keep the incident face's direction.
    std::vector<int> next(nv, -1);
    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (!mesh.edge_is_boundary[e]) continue;
        int f = mesh.edge_faces[e][0];
        const auto& fc = mesh.faces[f];
        for (int c = 0; c < 3; ++c) {
            int a = fc[c], b = fc[(c + 1) % 3];
            if ((a == mesh.edges[e][0] && b == mesh.edges[e][1]) ||
                (a == mesh.edges[e][1] && b == mesh.edges[e][0])) {
                if (next[a] != -1) fail("non-manifold boundary at vertex ", a);
                next[a] = b;
            }
        }
    }

    std::vector<std::vector<int>> loops;
    std::vector<bool> visited(nv, false);
    for (int v = 0; v < nv; ++v) {
        if (next[v] == -1 || visited[v]) continue;
        std::vector<int> loop;
        int cur = v;
        do {
            if (visited[cur]) fail("boundary loops are not simple at vertex ", cur);
            visited[cur] = true;
            loop.push_back(cur);
            cur = next[cur];
        } while (cur != v);
        loops.push_back(std::move(loop));
    }
    return loops;
}

TopologyReport topology(const Mesh& mesh) {
    TopologyReport r;
    r.vertex_count = mesh.n_vertices();
    r.edge_count = mesh.n_edges();
    r.face_count = mesh.n_faces();
    r.euler_characteristic = r.vertex_count - r.edge_count + r.face_count;
    r.boundary_loop_count = static_cast<int>(boundary_loops(mesh).size());
    r.closed = r.boundary_loop_count == 0;
    r.genus = (2 - r.euler_characteristic - r.boundary_loop_count) / 2;
    return r;
}

} // namespace calabi
