#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "calabi/mesh.hpp"
#include "calabi/packing_metric.hpp"

namespace calabi::testing {

// Deterministic generator (splitmix64).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform(double lo, double hi);
};

// -- fixture meshes ---------------------------------------------------------

Mesh single_triangle_345();          // d01=3, d12=4, d20=5
Mesh right_triangle_345_for_embed(); // d01=3, d12=5, d20=4
Mesh equilateral_triangle(double side);
Mesh two_equilateral(double side);   // two faces sharing an edge
Mesh unit_square();                  // split along the diagonal
Mesh asymmetric_pair();              // two dissimilar faces sharing an edge
Mesh grid(int nx, int ny, double spacing);
Mesh fan_disk(int n, double radius); // regular n-gon around a hub
Mesh tetrahedron(double side);
Mesh octahedron(double radius);
Mesh sphere_minus_face(double radius); // octahedron with one face removed
Mesh annulus();                        // two boundary loops
Mesh torus_grid(int n, int m, double big_radius, double tube_radius);
Mesh hemisphere(int rings, double radius);
Mesh flat_disk(int rings, double radius); // hemisphere connectivity, planar

// Corner vertex ids of grid(nx, ny, s), counterclockwise from the origin.
std::vector<int> grid_corners(int nx, int ny);

// -- metrics ----------------------------------------------------------------

// Initial packing with u jiggled by +-amplitude (halved until the triangle
// inequalities hold).
PackingMetric perturbed_metric(const Mesh&, std::uint64_t seed, double amplitude = 0.25);

// All radii equal; inversive distances chosen to reproduce original lengths.
PackingMetric equal_radius_metric(const Mesh&, double radius_fraction = 0.3);

// -- misc -------------------------------------------------------------------

// Writes content to a fresh file under the system temp directory.
std::string write_temp_file(const std::string& stem, const std::string& content);

double fd_curvature_derivative(const Mesh&, const PackingMetric&, int i, int j, double h = 1e-6);

} // namespace calabi::testing
