#include "calabi/flow.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "calabi/error.hpp"

namespace calabi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs_residual(const Mesh& mesh, const CurvatureState& state, bool interior_only) {
    double m = 0.0;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (interior_only && mesh.vertex_is_boundary[v]) continue;
        m = std::max(m, std::abs(state.target[v] - state.current[v]));
    }
    return m;
}

double masked_energy(const Mesh& mesh, const CurvatureState& state, bool interior_only) {
    double e = 0.0;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (interior_only && mesh.vertex_is_boundary[v]) continue;
        double r = state.target[v] - state.current[v];
        e += r * r;
    }
    return e;
}

struct EvalState {
    bool valid = false;
    std::vector<double> lengths;
    CornerAngles angles;
    CurvatureState state;
    double energy = 0.0;
    double residual = 0.0;
};

// Refresh targets and derived quantities for the current metric: circular
// targets follow the current lengths, free mode tracks boundary curvature so
// boundary residuals stay out of the flow direction.
void retarget(const Mesh& mesh, BoundaryMode mode, const std::vector<double>& static_targets,
              EvalState& s) {
    s.state.target =
        mode == BoundaryMode::Circular ? targets_circular(mesh, s.lengths) : static_targets;
    if (mode == BoundaryMode::Free) {
        for (int v = 0; v < mesh.n_vertices(); ++v)
            if (mesh.vertex_is_boundary[v]) s.state.target[v] = s.state.current[v];
    }
    const bool interior_only = mode == BoundaryMode::Free;
    s.energy = masked_energy(mesh, s.state, interior_only);
    s.residual = max_abs_residual(mesh, s.state, interior_only);
}

// Geometry of one candidate metric. Invalid when a squared length is
// non-positive or a triangle inequality fails. When frozen_targets is given
// (during step acceptance) the energy is measured against those targets;
// the descent guarantee needs the targets fixed along the line search.
EvalState evaluate(const Mesh& mesh, const PackingMetric& metric, BoundaryMode mode,
                   const std::vector<double>& static_targets,
                   const std::vector<double>* frozen_targets, std::string* why) {
    EvalState s;
    int bad_edge = -1;
    if (!try_edge_lengths(mesh, metric, s.lengths, &bad_edge)) {
        if (why)
            *why = "edge (" + std::to_string(mesh.edges[bad_edge][0]) + "," +
                   std::to_string(mesh.edges[bad_edge][1]) + ") has non-positive squared length";
        return s;
    }
    auto violations = check_triangle_inequalities(mesh, s.lengths);
    if (!violations.empty()) {
        if (why) *why = "face " + std::to_string(violations.front()) + " violates the triangle inequality";
        return s;
    }
    s.angles = corner_angles(mesh, s.lengths);
    s.state.current = vertex_curvatures(mesh, s.angles);
    s.valid = true;
    if (frozen_targets) {
        s.state.target = *frozen_targets;
        const bool interior_only = mode == BoundaryMode::Free;
        s.energy = masked_energy(mesh, s.state, interior_only);
        s.residual = max_abs_residual(mesh, s.state, interior_only);
    } else {
        retarget(mesh, mode, static_targets, s);
    }
    return s;
}

// Subtract the interior mean from every entry; pure rescaling of the metric,
// curvatures are unaffected.
void recenter(const Mesh& mesh, std::vector<double>& u) {
    double sum = 0.0;
    int count = 0;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (mesh.vertex_is_boundary[v]) continue;
        sum += u[v];
        ++count;
    }
    if (count == 0) return;
    double mean = sum / count;
    for (double& x : u) x -= mean;
}

} // namespace

double calabi_energy(const CurvatureState& state) {
    if (state.current.size() != state.target.size())
        fail("calabi_energy: ", state.current.size(), " curvatures vs ", state.target.size(),
             " targets");
    double e = 0.0;
    for (std::size_t v = 0; v < state.current.size(); ++v) {
        double r = state.target[v] - state.current[v];
        e += r * r;
    }
    return e;
}

std::vector<double> calabi_direction(const Mesh& mesh, const VertexMatrix& laplacian,
                                     const CurvatureState& state) {
    if (static_cast<int>(state.current.size()) != mesh.n_vertices() ||
        state.current.size() != state.target.size())
        fail("calabi_direction: dimension mismatch");
    std::vector<double> residual(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v)
        residual[v] = state.target[v] - state.current[v];
    return apply(mesh, laplacian, residual);
}

std::vector<double> ricci_direction(const CurvatureState& state) {
    std::vector<double> du(state.current.size());
    for (std::size_t v = 0; v < du.size(); ++v) du[v] = state.target[v] - state.current[v];
    return du;
}

std::vector<double> targets_fixed(const Mesh& mesh, const std::vector<CornerTarget>& corners) {
    std::vector<double> targets(mesh.n_vertices(), 0.0);
    double sum = 0.0;
    for (const auto& c : corners) {
        if (c.vertex < 0 || c.vertex >= mesh.n_vertices())
            fail("corner vertex ", c.vertex, " out of range");
        if (!mesh.vertex_is_boundary[c.vertex])
            fail("corner vertex ", c.vertex, " is not on the boundary");
        targets[c.vertex] = c.curvature;
        sum += c.curvature;
    }
    if (std::abs(sum - kTwoPi) > 1e-12)
        fail("corner targets sum to ", sum, ", expected 2*pi");
    return targets;
}

std::vector<double> targets_circular(const Mesh& mesh, const std::vector<double>& lengths) {
    auto loops = boundary_loops(mesh);
    if (loops.size() != 1)
        fail("circular boundary targets require exactly one boundary loop, found ",
             loops.size());
    const auto& loop = loops[0];
    const int n = static_cast<int>(loop.size());
    double total = 0.0;
    std::vector<double> seg(n);
    for (int i = 0; i < n; ++i) {
        int e = mesh.edge_between(loop[i], loop[(i + 1) % n]);
        seg[i] = lengths[e];
        total += seg[i];
    }
    const double c = std::numbers::pi / total;
    std::vector<double> targets(mesh.n_vertices(), 0.0);
    for (int i = 0; i < n; ++i) {
        double adjacent = seg[(i + n - 1) % n] + seg[i];
        targets[loop[i]] = c * adjacent;
    }
    return targets;
}

void apply_free_boundary(const Mesh& mesh, std::vector<double>& du) {
    for (int v = 0; v < mesh.n_vertices(); ++v)
        if (mesh.vertex_is_boundary[v]) du[v] = 0.0;
}

FlowResult run_flow(const Mesh& mesh, const PackingMetric& initial, const FlowConfig& config) {
    if (!(config.epsilon > 0.0)) fail("flow: epsilon must be positive");
    if (!(config.step > 0.0)) fail("flow: step must be positive");
    if (config.momentum > 0.0 && config.conjugate_gradient)
        fail("flow: momentum and conjugate-gradient acceleration are exclusive");
    if (static_cast<int>(initial.u.size()) != mesh.n_vertices())
        fail("flow: metric does not match mesh");

    std::vector<double> static_targets;
    switch (config.boundary) {
    case BoundaryMode::FixedCorners:
        static_targets = targets_fixed(mesh, config.corners);
        break;
    case BoundaryMode::Free:
        static_targets.assign(mesh.n_vertices(), 0.0);
        break;
    case BoundaryMode::ClosedGenusOne: {
        for (bool b : mesh.edge_is_boundary)
            if (b) fail("flow: genus-one mode requires a closed mesh");
        int chi = mesh.n_vertices() - mesh.n_edges() + mesh.n_faces();
        if (chi != 0) fail("flow: genus-one mode requires Euler characteristic 0, got ", chi);
        static_targets.assign(mesh.n_vertices(), 0.0);
        break;
    }
    case BoundaryMode::Circular:
        break; // recomputed from the metric every evaluation
    }

    FlowResult result;
    result.metric = initial;
    PackingMetric& metric = result.metric;

    std::string why;
    EvalState cur = evaluate(mesh, metric, config.boundary, static_targets, nullptr, &why);
    if (!cur.valid) fail("flow: initial metric is invalid: ", why);

    std::vector<double> u_prev = metric.u;
    const bool mask_boundary = config.boundary == BoundaryMode::Free;
    std::vector<double> cg_direction, cg_prev_gradient;

    bool converged = cur.residual < config.epsilon;
    int accepted = 0;
    while (!converged && accepted < config.max_iterations) {
        std::vector<double> du;
        if (config.kind == FlowKind::Calabi) {
            VertexMatrix lap = dual_laplacian(mesh, metric, cur.lengths, cur.angles);
            du = calabi_direction(mesh, lap, cur.state);
        } else {
            du = ricci_direction(cur.state);
        }
        if (mask_boundary) apply_free_boundary(mesh, du);

        if (config.conjugate_gradient) {
            // Polak-Ribiere-plus on the descent field du: beta clips to 0
            // (plain descent) whenever successive fields decorrelate, and the
            // combined direction is rejected unless it still descends.
            if (cg_direction.empty()) {
                cg_direction = du;
            } else {
                double num = 0.0, den = 0.0;
                for (int v = 0; v < mesh.n_vertices(); ++v) {
                    num += du[v] * (du[v] - cg_prev_gradient[v]);
                    den += cg_prev_gradient[v] * cg_prev_gradient[v];
                }
                double beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
                double along = 0.0;
                for (int v = 0; v < mesh.n_vertices(); ++v) {
                    cg_direction[v] = du[v] + beta * cg_direction[v];
                    along += cg_direction[v] * du[v];
                }
                if (!(along > 0.0)) cg_direction = du;
            }
            cg_prev_gradient = du;
            du = cg_direction;
        }

        std::vector<double> displacement(mesh.n_vertices());
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            displacement[v] = config.step * du[v];
            if (config.momentum > 0.0)
                displacement[v] += config.momentum * (metric.u[v] - u_prev[v]);
        }

        // Scale the whole displacement down until the candidate metric is
        // valid (and, with backtracking, the energy at frozen targets drops).
        // Heavy-ball iterations are not energy-monotone, so momentum runs
        // with the validity check only.
        const bool require_decrease = config.backtracking && config.momentum == 0.0;
        double scale = 1.0;
        PackingMetric candidate = metric;
        EvalState next;
        bool ok = false;
        for (int attempt = 0; attempt <= config.max_backtracks; ++attempt) {
            for (int v = 0; v < mesh.n_vertices(); ++v)
                candidate.u[v] = metric.u[v] + scale * displacement[v];
            if (!mask_boundary) recenter(mesh, candidate.u);
            next = evaluate(mesh, candidate, config.boundary, static_targets,
                            &cur.state.target, nullptr);
            if (next.valid && (!require_decrease || next.energy < cur.energy)) {
                ok = true;
                break;
            }
            scale *= config.backtrack_shrink;
        }
        if (!ok)
            fail("flow: step could not be repaired at iteration ", accepted + 1, " (residual ",
                 cur.residual, ", last scale ", scale / config.backtrack_shrink, ")");

        u_prev = metric.u;
        metric.u = candidate.u;
        cur = std::move(next);
        retarget(mesh, config.boundary, static_targets, cur);
        ++accepted;
        result.trace.push_back({accepted, cur.energy, cur.residual, scale * config.step});
        if (config.observer) config.observer(accepted, cur.state.current, cur.state.target);
        converged = cur.residual < config.epsilon;
    }

    result.converged = converged;
    result.iterations = accepted;
    result.final_residual = cur.residual;
    result.final_energy = cur.energy;
    return result;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
    os << "iter,energy,max_residual,step\n";
    char buf[128];
    for (const auto& row : trace) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", row.iteration, row.energy,
                      row.max_residual, row.step);
        os << buf;
    }
}

} // namespace calabi
