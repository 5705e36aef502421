#include <doctest.h>

#include <cmath>
#include <numbers>

#include "calabi/error.hpp"
#include "calabi/mesh.hpp"
#include "helpers.hpp"

using namespace calabi;
using namespace calabi::testing;

TEST_CASE("single triangle connectivity") {
    Mesh m = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0, 1, 2}}});
    CHECK(m.n_vertices() == 3);
    CHECK(m.n_edges() == 3);
    CHECK(m.n_faces() == 1);
    // lengths 1, 1, sqrt(2) on edges (0,1), (0,2), (1,2)
    CHECK(m.original_lengths[m.edge_between(0, 1)] == doctest::Approx(1.0));
    CHECK(m.original_lengths[m.edge_between(0, 2)] == doctest::Approx(1.0));
    CHECK(m.original_lengths[m.edge_between(1, 2)] == doctest::Approx(std::sqrt(2.0)));
    for (bool b : m.vertex_is_boundary) CHECK(b);
}

TEST_CASE("build_mesh rejects bad input") {
    CHECK_THROWS_AS(build_mesh({{0, 0, 0}, {1, 0, 0}}, {{{0, 1, 2}}}), Error);
    CHECK_THROWS_AS(build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0, 1, 1}}}), Error);
    // zero-length edge
    CHECK_THROWS_AS(build_mesh({{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}, {{{0, 1, 2}}}), Error);
    // unreferenced vertex
    CHECK_THROWS_AS(
        build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}}, {{{0, 1, 2}}}), Error);
    // edge shared by three faces
    CHECK_THROWS_AS(build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}},
                               {{{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}}),
                    Error);
    // two faces traversing an edge in the same direction
    CHECK_THROWS_AS(
        build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{{0, 1, 2}, {0, 1, 3}}}),
        Error);
}

TEST_CASE("bowtie vertex is rejected") {
    // two triangle fans meeting only at vertex 0
    CHECK_THROWS_AS(build_mesh({{0, 0, 0},
                                {1, 0, 0},
                                {0, 1, 0},
                                {-1, 0, 0},
                                {0, -1, 0}},
                               {{{0, 1, 2}, {0, 3, 4}}}),
                    Error);
}

TEST_CASE("topology of a tetrahedron") {
    TopologyReport t = topology(tetrahedron(1.0));
    CHECK(t.vertex_count == 4);
    CHECK(t.edge_count == 6);
    CHECK(t.face_count == 4);
    CHECK(t.euler_characteristic == 2);
    CHECK(t.genus == 0);
    CHECK(t.boundary_loop_count == 0);
    CHECK(t.closed);
}

TEST_CASE("topology of a single triangle") {
    TopologyReport t = topology(equilateral_triangle(1.0));
    CHECK(t.euler_characteristic == 1);
    CHECK(t.boundary_loop_count == 1);
    CHECK_FALSE(t.closed);
}

TEST_CASE("topology of a torus grid") {
    TopologyReport t = topology(torus_grid(8, 8, 2.0, 0.8));
    CHECK(t.vertex_count == 64);
    CHECK(t.euler_characteristic == 0);
    CHECK(t.genus == 1);
    CHECK(t.boundary_loop_count == 0);
    CHECK(t.closed);
}

TEST_CASE("topology of an annulus") {
    TopologyReport t = topology(annulus());
    CHECK(t.euler_characteristic == 0);
    CHECK(t.boundary_loop_count == 2);
    CHECK(t.genus == 0);
}

TEST_CASE("boundary loop order follows face orientation") {
    Mesh m = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0, 1, 2}}});
    auto loops = boundary_loops(m);
    REQUIRE(loops.size() == 1);
    REQUIRE(loops[0].size() == 3);
    // starts from the lowest vertex and follows 0 -> 1 -> 2
    CHECK(loops[0][0] == 0);
    CHECK(loops[0][1] == 1);
    CHECK(loops[0][2] == 2);
}

TEST_CASE("grid boundary") {
    Mesh m = grid(5, 5, 1.0);
    TopologyReport t = topology(m);
    CHECK(t.vertex_count == 25);
    CHECK(t.face_count == 32);
    CHECK(t.euler_characteristic == 1);
    CHECK(t.boundary_loop_count == 1);
    int interior = 0;
    for (bool b : m.vertex_is_boundary)
        if (!b) ++interior;
    CHECK(interior == 9);
}

TEST_CASE("hemisphere generators") {
    Mesh h = hemisphere(3, 1.0);
    CHECK(h.n_faces() == 54);
    TopologyReport t = topology(h);
    CHECK(t.euler_characteristic == 1);
    CHECK(t.boundary_loop_count == 1);

    Mesh d = flat_disk(4, 2.0);
    CHECK(d.n_faces() == 96);
    CHECK(topology(d).euler_characteristic == 1);
}

TEST_CASE("vertex fans cover every incident face") {
    Mesh m = grid(4, 4, 1.0);
    auto fans = vertex_face_fans(m);
    std::vector<int> count(m.n_vertices(), 0);
    for (int f = 0; f < m.n_faces(); ++f)
        for (int v : m.faces[f]) ++count[v];
    for (int v = 0; v < m.n_vertices(); ++v)
        CHECK(static_cast<int>(fans[v].size()) == count[v]);
}
