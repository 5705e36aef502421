#pragma once
#include <functional>
#include <iosfwd>
#include <vector>

#include "calabi/geometry.hpp"
#include "calabi/mesh.hpp"
#include "calabi/packing_metric.hpp"

namespace calabi {

enum class FlowKind { Calabi, Ricci };

// FixedCorners: zero targets except prescribed boundary corners (sum 2*pi).
// Circular: boundary targets proportional to adjacent boundary lengths,
//   recomputed every iteration.
// Free: no boundary targets; boundary factors are frozen and convergence is
//   measured on interior vertices.
// ClosedGenusOne: zero targets on a closed genus-1 mesh.
enum class BoundaryMode { FixedCorners, Circular, Free, ClosedGenusOne };

struct CornerTarget {
    int vertex;
    double curvature;
};

struct FlowConfig {
    FlowKind kind = FlowKind::Calabi;
    BoundaryMode boundary = BoundaryMode::Free;
    double epsilon = 1e-6;     // convergence threshold on max |K - K_target|
    int max_iterations = 50000;
    double step = 0.05;
    bool backtracking = true;  // require strict energy decrease per step
    double backtrack_shrink = 0.5;
    int max_backtracks = 30;
    // Heavy-ball coefficient, 0 disables. Momentum iterations are not
    // energy-monotone, so the strict-decrease check is skipped while on.
    double momentum = 0.0;
    // Polak-Ribiere conjugate-gradient direction instead of plain descent;
    // composes with backtracking (the line search enforces the decrease) and
    // restarts itself whenever conjugacy stops paying off.
    bool conjugate_gradient = false;
    std::vector<CornerTarget> corners; // FixedCorners only

    // Called after every accepted step with (iteration, K, K_target).
    std::function<void(int, const std::vector<double>&, const std::vector<double>&)> observer;
};

struct TraceRow {
    int iteration;
    double energy;
    double max_residual;
    double step;
};

struct FlowResult {
    PackingMetric metric;
    std::vector<TraceRow> trace;
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    double final_energy = 0.0;
};

// Sum of squared curvature residuals.
double calabi_energy(const CurvatureState&);

// L^T (K_target - K); descent direction for the energy (L is symmetric).
std::vector<double> calabi_direction(const Mesh&, const VertexMatrix& laplacian,
                                     const CurvatureState&);
// K_target - K.
std::vector<double> ricci_direction(const CurvatureState&);

// Zero targets except the listed boundary corners; validates corner placement
// and that the prescribed values sum to 2*pi (within 1e-12).
std::vector<double> targets_fixed(const Mesh&, const std::vector<CornerTarget>&);

// Zero interior targets; boundary target c * (l_prev + l_next) with
// c = pi / total boundary length, so the boundary sum is exactly 2*pi.
// Requires a single boundary loop.
std::vector<double> targets_circular(const Mesh&, const std::vector<double>& lengths);

// Zeroes du on boundary vertices.
void apply_free_boundary(const Mesh&, std::vector<double>& du);

// Gradient flow of the conformal factors until max |K - K_target| < epsilon.
// Steps that break a triangle inequality (or fail to decrease the energy,
// with backtracking on) are halved; an unrepairable step throws. After each
// accepted step u is recentered to zero interior mean (skipped in Free mode,
// which must leave boundary factors untouched).
FlowResult run_flow(const Mesh&, const PackingMetric& initial, const FlowConfig&);

// `iter,energy,max_residual,step` rows.
void write_trace_csv(std::ostream&, const std::vector<TraceRow>&);

} // namespace calabi
