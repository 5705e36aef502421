#include "calabi/conformality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "calabi/error.hpp"
#include "calabi/geometry.hpp"

namespace calabi {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double heron_area(double a, double b, double c) {
    double s = (a + b + c) / 2.0;
    return std::sqrt(std::max(s * (s - a) * (s - b) * (s - c), 0.0));
}

ConformalityReport analyze_impl(const Mesh& mesh,
                                const std::vector<std::array<Vec2, 3>>& corner_uv,
                                HistogramConfig hist) {
    if (hist.bins < 1 || !(hist.hi > hist.lo)) fail("analyze: bad histogram range");
    const int nf = mesh.n_faces();
    CornerAngles original = corner_angles(mesh, mesh.original_lengths);

    ConformalityReport r;
    r.hist = hist;
    r.corner_angle_ratio.resize(3 * nf);
    r.corner_rel_error.resize(3 * nf);
    r.histogram.assign(hist.bins + 2, 0);
    r.face_area_ratio.resize(nf);

    const double width = (hist.hi - hist.lo) / hist.bins;
    double err_sum = 0.0;
    for (int f = 0; f < nf; ++f) {
        const auto& cu = corner_uv[f];
        double p01 = norm(cu[1] - cu[0]);
        double p12 = norm(cu[2] - cu[1]);
        double p20 = norm(cu[0] - cu[2]);
        // Planar angles by the same cosine-law path as the originals, so the
        // identity parameterization reproduces them bit for bit.
        std::array<double, 3> planar;
        auto corner = [](double adj1, double adj2, double opp) {
            double x = (adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2);
            return std::acos(std::clamp(x, -1.0, 1.0));
        };
        if (!(p01 > 0.0 && p12 > 0.0 && p20 > 0.0))
            fail("analyze: face ", f, " has a zero-length planar edge");
        planar[0] = corner(p01, p20, p12);
        planar[1] = corner(p01, p12, p20);
        planar[2] = corner(p12, p20, p01);

        for (int c = 0; c < 3; ++c) {
            double orig = original.angle[f][c];
            if (!(orig > 0.0)) fail("analyze: face ", f, " has a zero original angle");
            double ratio = planar[c] / orig;
            double rel = std::abs(planar[c] - orig) / orig;
            r.corner_angle_ratio[3 * f + c] = ratio;
            r.corner_rel_error[3 * f + c] = rel;
            err_sum += rel;
            r.max_rel_angle_error = std::max(r.max_rel_angle_error, rel);
            if (ratio < hist.lo)
                ++r.histogram[hist.bins];
            else if (ratio >= hist.hi)
                ++r.histogram[hist.bins + 1];
            else
                ++r.histogram[static_cast<int>((ratio - hist.lo) / width)];
        }

        const auto& fe = mesh.face_edges[f];
        double orig_area = heron_area(mesh.original_lengths[fe[0]], mesh.original_lengths[fe[1]],
                                      mesh.original_lengths[fe[2]]);
        double planar_area = 0.5 * cross(cu[1] - cu[0], cu[2] - cu[0]);
        if (!(orig_area > 0.0)) fail("analyze: face ", f, " has zero original area");
        r.face_area_ratio[f] = planar_area / orig_area;
        if (!(planar_area > 0.0)) ++r.flipped_faces;
    }

    r.mean_rel_angle_error = err_sum / (3.0 * nf);
    double mean = std::accumulate(r.face_area_ratio.begin(), r.face_area_ratio.end(), 0.0) / nf;
    double var = 0.0;
    for (double a : r.face_area_ratio) var += (a - mean) * (a - mean);
    r.mean_area_ratio = mean;
    r.area_ratio_stddev = std::sqrt(var / nf);
    return r;
}

} // namespace

ConformalityReport analyze(const Mesh& mesh, const Parameterization& param,
                           HistogramConfig hist) {
    for (int v = 0; v < mesh.n_vertices(); ++v)
        if (!param.embedded[v]) fail("analyze: vertex ", v, " is not embedded");
    std::vector<std::array<Vec2, 3>> corner_uv(mesh.n_faces());
    for (int f = 0; f < mesh.n_faces(); ++f)
        for (int c = 0; c < 3; ++c) corner_uv[f][c] = param.uv[mesh.faces[f][c]];
    return analyze_impl(mesh, corner_uv, hist);
}

ConformalityReport analyze_corner_uv(const Mesh& mesh,
                                     const std::vector<std::array<Vec2, 3>>& corner_uv,
                                     HistogramConfig hist) {
    if (static_cast<int>(corner_uv.size()) != mesh.n_faces())
        fail("analyze: expected ", mesh.n_faces(), " uv triples, got ", corner_uv.size());
    return analyze_impl(mesh, corner_uv, hist);
}

std::vector<std::pair<int, double>> sample_corners(const ConformalityReport& report, int n,
                                                   std::uint64_t seed) {
    const int total = static_cast<int>(report.corner_rel_error.size());
    if (n < 0 || n > total) fail("sample_corners: n = ", n, " exceeds ", total, " corners");
    std::vector<int> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    std::uint64_t state = seed;
    std::vector<std::pair<int, double>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        int j = i + static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(total - i));
        std::swap(idx[i], idx[j]);
        out.emplace_back(idx[i], report.corner_rel_error[idx[i]]);
    }
    return out;
}

void write_report_csv(std::ostream& os, const ConformalityReport& r) {
    char buf[96];
    const double width = (r.hist.hi - r.hist.lo) / r.hist.bins;
    for (int b = 0; b < r.hist.bins; ++b) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%lld\n", r.hist.lo + b * width,
                      r.hist.lo + (b + 1) * width, static_cast<long long>(r.histogram[b]));
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "-inf,%.17g,%lld\n", r.hist.lo,
                  static_cast<long long>(r.histogram[r.hist.bins]));
    os << buf;
    std::snprintf(buf, sizeof buf, "%.17g,inf,%lld\n", r.hist.hi,
                  static_cast<long long>(r.histogram[r.hist.bins + 1]));
    os << buf;
    std::snprintf(buf, sizeof buf, "mean_rel_angle_error,%.17g\n", r.mean_rel_angle_error);
    os << buf;
    std::snprintf(buf, sizeof buf, "max_rel_angle_error,%.17g\n", r.max_rel_angle_error);
    os << buf;
    std::snprintf(buf, sizeof buf, "flipped_faces,%d\n", r.flipped_faces);
    os << buf;
    std::snprintf(buf, sizeof buf, "mean_area_ratio,%.17g\n", r.mean_area_ratio);
    os << buf;
    std::snprintf(buf, sizeof buf, "area_ratio_stddev,%.17g\n", r.area_ratio_stddev);
    os << buf;
}

} // namespace calabi
