#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "calabi/error.hpp"
#include "calabi/obj_io.hpp"
#include "helpers.hpp"

using namespace calabi;
using namespace calabi::testing;

TEST_CASE("load a single triangle") {
    auto path = write_temp_file("tri", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
    Mesh m = load_mesh(path);
    CHECK(m.n_vertices() == 3);
    CHECK(m.n_edges() == 3);
    CHECK(m.n_faces() == 1);
    CHECK(m.original_lengths[m.edge_between(1, 2)] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("load a tetrahedron") {
    auto path = write_temp_file("tet",
                                "v 1 1 1\nv 1 -1 -1\nv -1 1 -1\nv -1 -1 1\n"
                                "f 1 2 3\nf 1 4 2\nf 1 3 4\nf 2 4 3\n");
    Mesh m = load_mesh(path);
    CHECK(m.n_vertices() == 4);
    CHECK(m.n_edges() == 6);
    CHECK(m.n_faces() == 4);
    CHECK(topology(m).euler_characteristic == 2);
}

TEST_CASE("quads are fan-triangulated") {
    auto path = write_temp_file("quad", "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
    Mesh m = load_mesh(path);
    CHECK(m.n_faces() == 2);
    CHECK(topology(m).euler_characteristic == 1);
}

TEST_CASE("slash index forms and unreferenced vertices") {
    auto path = write_temp_file("forms",
                                "v 9 9 9\nv 0 0 0\nv 1 0 0\nv 0 1 0\nvt 0 0\nvn 0 0 1\n"
                                "f 2/1/1 3/1/1 4//1\n");
    Mesh m = load_mesh(path);
    CHECK(m.n_vertices() == 3); // the unreferenced vertex is dropped
    CHECK(m.n_faces() == 1);
}

TEST_CASE("loader errors") {
    CHECK_THROWS_AS(load_mesh("/nonexistent/file.obj"), Error);
    CHECK_THROWS_AS(load_mesh(write_temp_file("junk", "v 0 0\nf 1 2 3\n")), Error);
    CHECK_THROWS_AS(load_mesh(write_temp_file("range", "v 0 0 0\nf 1 2 3\n")), Error);
    CHECK_THROWS_AS(load_mesh(write_temp_file("short", "v 0 0 0\nv 1 0 0\nf 1 2\n")), Error);
    CHECK_THROWS_AS(load_mesh(write_temp_file("nofaces", "v 0 0 0\n")), Error);
    // edge shared by three faces
    CHECK_THROWS_AS(load_mesh(write_temp_file("nonmanifold",
                                              "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1 1 1\n"
                                              "f 1 2 3\nf 2 1 4\nf 1 2 5\n")),
                    Error);
    // repeated index
    CHECK_THROWS_AS(load_mesh(write_temp_file("repeat", "v 0 0 0\nv 1 0 0\nf 1 2 2\n")), Error);
}

TEST_CASE("save then load round-trips positions bit-exactly") {
    Mesh m = build_mesh({{1.0 / 3.0, 2.0 / 7.0, -0.1234567890123456789},
                         {std::sqrt(2.0), 0, 1e-17},
                         {0.1, std::numbers::pi, 0}},
                        {{{0, 1, 2}}});
    std::ostringstream os;
    write_obj(os, m);
    auto path = write_temp_file("roundtrip", os.str());
    Mesh re = load_mesh(path);
    REQUIRE(re.n_vertices() == 3);
    for (int v = 0; v < 3; ++v) {
        CHECK(re.positions[v].x == m.positions[v].x);
        CHECK(re.positions[v].y == m.positions[v].y);
        CHECK(re.positions[v].z == m.positions[v].z);
    }
}

TEST_CASE("uv export and per-corner import") {
    Mesh m = unit_square();
    std::vector<Vec2> uv{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::ostringstream os;
    write_obj(os, m, &uv);
    std::string text = os.str();
    CHECK(text.find("vt ") != std::string::npos);
    CHECK(text.find("f 1/1 2/2 3/3") != std::string::npos);

    auto path = write_temp_file("withuv", text);
    ObjWithUv obj = load_obj_with_uv(path);
    CHECK(obj.has_uv);
    REQUIRE(obj.corner_uv.size() == 2);
    CHECK(obj.corner_uv[0][1].x == doctest::Approx(1.0));

    ObjWithUv plain =
        load_obj_with_uv(write_temp_file("nouv", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"));
    CHECK_FALSE(plain.has_uv);
}
