#include "helpers.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "calabi/error.hpp"
#include "calabi/geometry.hpp"

namespace calabi::testing {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::uint64_t Rng::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
}

Mesh single_triangle_345() {
    return build_mesh({{0, 0, 0}, {3, 0, 0}, {3, 4, 0}}, {{{0, 1, 2}}});
}

Mesh right_triangle_345_for_embed() {
    return build_mesh({{0, 0, 0}, {3, 0, 0}, {0, 4, 0}}, {{{0, 1, 2}}});
}

Mesh equilateral_triangle(double s) {
    return build_mesh({{0, 0, 0}, {s, 0, 0}, {s / 2, s * std::sqrt(3.0) / 2, 0}}, {{{0, 1, 2}}});
}

Mesh two_equilateral(double s) {
    double h = s * std::sqrt(3.0) / 2;
    return build_mesh({{0, 0, 0}, {s, 0, 0}, {s / 2, h, 0}, {s / 2, -h, 0}},
                      {{{0, 1, 2}, {1, 0, 3}}});
}

Mesh unit_square() {
    return build_mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{{0, 1, 2}, {0, 2, 3}}});
}

Mesh asymmetric_pair() {
    return build_mesh({{0, 0, 0}, {4, 0, 0}, {2, 3, 0}, {5, 4, 0}}, {{{0, 1, 2}, {1, 3, 2}}});
}

Mesh grid(int nx, int ny, double s) {
    std::vector<Vec3> pos;
    pos.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) pos.push_back({i * s, j * s, 0});
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            int a = j * nx + i, b = j * nx + i + 1, c = (j + 1) * nx + i + 1, d = (j + 1) * nx + i;
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    }
    return build_mesh(std::move(pos), std::move(faces));
}

std::vector<int> grid_corners(int nx, int ny) {
    return {0, nx - 1, ny * nx - 1, (ny - 1) * nx};
}

Mesh fan_disk(int n, double radius) {
    std::vector<Vec3> pos{{0, 0, 0}};
    for (int j = 0; j < n; ++j) {
        double a = 2 * kPi * j / n;
        pos.push_back({radius * std::cos(a), radius * std::sin(a), 0});
    }
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j < n; ++j) faces.push_back({0, 1 + j, 1 + (j + 1) % n});
    return build_mesh(std::move(pos), std::move(faces));
}

Mesh tetrahedron(double side) {
    double s = side / (2 * std::sqrt(2.0));
    return build_mesh({{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}},
                      {{{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}}});
}

namespace {
std::vector<std::array<int, 3>> octahedron_faces() {
    return {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
}
std::vector<Vec3> octahedron_positions(double r) {
    return {{r, 0, 0}, {-r, 0, 0}, {0, r, 0}, {0, -r, 0}, {0, 0, r}, {0, 0, -r}};
}
} // namespace

Mesh octahedron(double radius) {
    return build_mesh(octahedron_positions(radius), octahedron_faces());
}

Mesh sphere_minus_face(double radius) {
    auto faces = octahedron_faces();
    faces.pop_back();
    return build_mesh(octahedron_positions(radius), std::move(faces));
}

Mesh annulus() {
    std::vector<Vec3> pos;
    for (int k = 0; k < 4; ++k) {
        double a = kPi / 2 * k + kPi / 4;
        pos.push_back({std::cos(a), std::sin(a), 0});
    }
    for (int k = 0; k < 4; ++k) {
        double a = kPi / 2 * k;
        pos.push_back({2 * std::cos(a), 2 * std::sin(a), 0});
    }
    std::vector<std::array<int, 3>> faces;
    for (int k = 0; k < 4; ++k) {
        int i0 = k, i1 = (k + 1) % 4, o0 = 4 + k, o1 = 4 + (k + 1) % 4;
        faces.push_back({o0, o1, i0});
        faces.push_back({i0, o1, i1});
    }
    return build_mesh(std::move(pos), std::move(faces));
}

Mesh torus_grid(int n, int m, double big_radius, double tube_radius) {
    std::vector<Vec3> pos;
    pos.reserve(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        double u = 2 * kPi * i / n;
        for (int j = 0; j < m; ++j) {
            double v = 2 * kPi * j / m;
            double w = big_radius + tube_radius * std::cos(v);
            pos.push_back({w * std::cos(u), w * std::sin(u), tube_radius * std::sin(v)});
        }
    }
    auto vid = [&](int i, int j) { return (i % n) * m + (j % m); };
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    }
    return build_mesh(std::move(pos), std::move(faces));
}

namespace {

// Concentric-ring disk triangulation; `shape` maps (fraction of full radius,
// angle) to a position.
template <typename Shape>
Mesh ring_disk(int rings, Shape&& shape) {
    std::vector<Vec3> pos{shape(0.0, 0.0)};
    std::vector<int> ring_start{0};
    for (int k = 1; k <= rings; ++k) {
        ring_start.push_back(static_cast<int>(pos.size()));
        int count = 6 * k;
        for (int j = 0; j < count; ++j) pos.push_back(shape(double(k) / rings, 2 * kPi * j / count));
    }
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j < 6; ++j) faces.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});
    for (int k = 2; k <= rings; ++k) {
        int a = 6 * (k - 1), b = 6 * k;
        int abase = ring_start[k - 1], bbase = ring_start[k];
        int i = 0, j = 0;
        while (i < a || j < b) {
            bool advance_outer;
            if (i >= a)
                advance_outer = true;
            else if (j >= b)
                advance_outer = false;
            else
                advance_outer = (j + 1) * a <= (i + 1) * b; // (j+1)/b <= (i+1)/a
            if (advance_outer) {
                faces.push_back({abase + i % a, bbase + j % b, bbase + (j + 1) % b});
                ++j;
            } else {
                faces.push_back({abase + i % a, bbase + j % b, abase + (i + 1) % a});
                ++i;
            }
        }
    }
    return build_mesh(std::move(pos), std::move(faces));
}

} // namespace

Mesh hemisphere(int rings, double radius) {
    return ring_disk(rings, [&](double f, double angle) {
        double phi = kPi / 2 * f;
        return Vec3{radius * std::sin(phi) * std::cos(angle),
                    radius * std::sin(phi) * std::sin(angle), radius * std::cos(phi)};
    });
}

Mesh flat_disk(int rings, double radius) {
    return ring_disk(rings, [&](double f, double angle) {
        return Vec3{radius * f * std::cos(angle), radius * f * std::sin(angle), 0.0};
    });
}

PackingMetric perturbed_metric(const Mesh& mesh, std::uint64_t seed, double amplitude) {
    PackingMetric metric = initial_inversive_metric(mesh);
    Rng rng(seed);
    std::vector<double> noise(metric.u.size());
    for (auto& x : noise) x = rng.uniform(-1.0, 1.0);
    for (int attempt = 0; attempt < 40; ++attempt) {
        PackingMetric trial = metric;
        for (std::size_t v = 0; v < trial.u.size(); ++v) trial.u[v] += amplitude * noise[v];
        std::vector<double> lengths;
        if (try_edge_lengths(mesh, trial, lengths) &&
            check_triangle_inequalities(mesh, lengths).empty())
            return trial;
        amplitude /= 2;
    }
    return metric;
}

PackingMetric equal_radius_metric(const Mesh& mesh, double radius_fraction) {
    double shortest = mesh.original_lengths[0];
    for (double l : mesh.original_lengths) shortest = std::min(shortest, l);
    double rho = radius_fraction * shortest;
    std::vector<double> radii(mesh.n_vertices(), rho);
    std::vector<double> inv(mesh.n_edges());
    for (int e = 0; e < mesh.n_edges(); ++e) {
        double d = mesh.original_lengths[e];
        inv[e] = (d * d - 2 * rho * rho) / (2 * rho * rho);
    }
    return inversive_metric(mesh, std::move(radii), std::move(inv));
}

std::string write_temp_file(const std::string& stem, const std::string& content) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path() / "calabi_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / (stem + "_" + std::to_string(counter++) + ".obj");
    std::ofstream os(path);
    os << content;
    return path.string();
}

double fd_curvature_derivative(const Mesh& mesh, const PackingMetric& metric, int i, int j,
                               double h) {
    auto k_of = [&](double uj) {
        PackingMetric m = metric;
        m.u[j] = uj;
        auto lengths = edge_lengths(mesh, m);
        auto angles = corner_angles(mesh, lengths);
        return vertex_curvatures(mesh, angles)[i];
    };
    return (k_of(metric.u[j] + h) - k_of(metric.u[j] - h)) / (2 * h);
}

} // namespace calabi::testing
