#pragma once
#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "calabi/embedding.hpp"
#include "calabi/mesh.hpp"

namespace calabi {

struct HistogramConfig {
    double lo = 0.5;
    double hi = 1.5;
    int bins = 100;
};

// Angle-preservation statistics of a parameterization. Original angles come
// from the mesh's original edge lengths, planar angles from the embedding;
// corners are indexed 3*face + corner.
struct ConformalityReport {
    HistogramConfig hist;
    std::vector<double> corner_angle_ratio; // planar / original
    std::vector<double> corner_rel_error;   // |planar - original| / original
    double mean_rel_angle_error = 0.0;
    double max_rel_angle_error = 0.0;
    // bins regular counts over [lo, hi), then underflow and overflow.
    std::vector<std::int64_t> histogram;
    std::vector<double> face_area_ratio;    // signed planar area / original area
    double mean_area_ratio = 0.0;
    double area_ratio_stddev = 0.0;
    int flipped_faces = 0;
};

ConformalityReport analyze(const Mesh&, const Parameterization&, HistogramConfig hist = {});
// Same statistics from per-corner uv triples (seams allowed).
ConformalityReport analyze_corner_uv(const Mesh&, const std::vector<std::array<Vec2, 3>>&,
                                     HistogramConfig hist = {});

// Deterministic sample of n distinct corners; returns (corner id, relative
// angle error) pairs.
std::vector<std::pair<int, double>> sample_corners(const ConformalityReport&, int n,
                                                   std::uint64_t seed);

// Histogram rows `bin_lo,bin_hi,count` (under/overflow appended), then
// summary rows `metric,value`.
void write_report_csv(std::ostream&, const ConformalityReport&);

} // namespace calabi
