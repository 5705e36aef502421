#include "calabi/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "calabi/conformality.hpp"
#include "calabi/cut.hpp"
#include "calabi/embedding.hpp"
#include "calabi/error.hpp"
#include "calabi/flow.hpp"
#include "calabi/log.hpp"
#include "calabi/obj_io.hpp"
#include "calabi/svg.hpp"

namespace calabi {

namespace {

std::vector<CornerTarget> parse_corners(const std::vector<std::string>& tokens) {
    std::vector<CornerTarget> corners;
    for (const auto& t : tokens) {
        CornerTarget c{};
        auto colon = t.find(':');
        try {
            c.vertex = std::stoi(t.substr(0, colon));
            c.curvature = colon == std::string::npos ? std::numbers::pi / 2
                                                     : std::stod(t.substr(colon + 1));
        } catch (const std::exception&) {
            fail("bad corner token '", t, "'; expected v or v:K");
        }
        corners.push_back(c);
    }
    return corners;
}

FlowConfig make_flow_config(const PipelineOptions& opt, const Mesh& mesh,
                            const TopologyReport& topo) {
    FlowConfig config;
    if (opt.flow == "calabi")
        config.kind = FlowKind::Calabi;
    else if (opt.flow == "ricci")
        config.kind = FlowKind::Ricci;
    else
        fail("unknown flow '", opt.flow, "'");

    if (opt.boundary == "free")
        config.boundary = BoundaryMode::Free;
    else if (opt.boundary == "circle")
        config.boundary = BoundaryMode::Circular;
    else if (opt.boundary == "rect")
        config.boundary = BoundaryMode::FixedCorners;
    else if (opt.boundary == "torus")
        config.boundary = BoundaryMode::ClosedGenusOne;
    else
        fail("unknown boundary mode '", opt.boundary, "'");

    if (config.boundary == BoundaryMode::ClosedGenusOne) {
        if (!topo.closed || topo.genus != 1)
            fail("boundary mode 'torus' needs a closed genus-1 mesh; input has genus ",
                 topo.genus, " with ", topo.boundary_loop_count, " boundary loops");
    } else {
        if (topo.euler_characteristic != 1)
            fail("boundary mode '", opt.boundary,
                 "' needs a topological disk (Euler characteristic 1); input has ",
                 topo.euler_characteristic);
    }

    if (config.boundary == BoundaryMode::FixedCorners) {
        if (opt.corner_tokens.empty()) fail("boundary mode 'rect' requires --corners");
        config.corners = parse_corners(opt.corner_tokens);
    } else if (!opt.corner_tokens.empty()) {
        fail("--corners is only meaningful with --boundary rect");
    }

    config.epsilon = opt.epsilon;
    config.max_iterations = opt.max_iterations;
    config.step = opt.step;
    config.backtracking = opt.backtracking;
    config.momentum = opt.momentum;
    config.conjugate_gradient = opt.conjugate_gradient;
    (void)mesh;
    return config;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream os(path);
    if (!os) fail("cannot write '", path, "'");
    os << body;
}

template <typename Writer>
void emit(RunManifest& m, const std::string& path, Writer&& writer) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) fail("cannot write '", path, "'");
    writer(os);
    m.outputs.push_back(path);
}

} // namespace

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["input"] = input;
    j["boundary"] = options.boundary;
    j["flow"] = options.flow;
    j["epsilon"] = options.epsilon;
    j["max_iterations"] = options.max_iterations;
    j["step"] = options.step;
    j["backtracking"] = options.backtracking;
    j["momentum"] = options.momentum;
    j["conjugate_gradient"] = options.conjugate_gradient;
    j["corners"] = options.corner_tokens;
    if (topo_known) {
        j["topology"] = {{"vertices", topo.vertex_count},
                         {"edges", topo.edge_count},
                         {"faces", topo.face_count},
                         {"euler_characteristic", topo.euler_characteristic},
                         {"genus", topo.genus},
                         {"boundary_loops", topo.boundary_loop_count},
                         {"closed", topo.closed}};
    }
    j["status"] = status;
    if (!error.empty()) j["error"] = error;
    j["converged"] = converged;
    j["iterations"] = iterations;
    j["final_residual"] = final_residual;
    j["final_energy"] = final_energy;
    if (status == "ok") {
        j["mean_rel_angle_error"] = mean_rel_angle_error;
        j["max_edge_error"] = max_edge_error;
        j["flipped_faces"] = flipped_faces;
        j["uv_scale"] = uv_scale;
    }
    j["outputs"] = outputs;
    j["wall_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

RunManifest run_pipeline(const PipelineOptions& opt) {
    RunManifest m;
    m.input = opt.input;
    m.options = opt;
    const auto t0 = std::chrono::steady_clock::now();

    try {
        Mesh mesh = load_mesh(opt.input);
        m.topo = topology(mesh);
        m.topo_known = true;
        {
            std::ostringstream os;
            os << "loaded " << opt.input << ": V=" << m.topo.vertex_count
               << " E=" << m.topo.edge_count << " F=" << m.topo.face_count
               << " chi=" << m.topo.euler_characteristic
               << " loops=" << m.topo.boundary_loop_count;
            log_info(os.str());
        }

        FlowConfig config = make_flow_config(opt, mesh, m.topo);
        PackingMetric metric = initial_inversive_metric(mesh);
        FlowResult flow = run_flow(mesh, metric, config);
        m.converged = flow.converged;
        m.iterations = flow.iterations;
        m.final_residual = flow.final_residual;
        m.final_energy = flow.final_energy;
        {
            std::ostringstream os;
            os << "flow " << (flow.converged ? "converged" : "did not converge") << " after "
               << flow.iterations << " iterations, max residual " << flow.final_residual;
            log_info(os.str());
        }

        emit(m, opt.trace_csv, [&](std::ostream& os) { write_trace_csv(os, flow.trace); });

        std::vector<double> final_lengths = edge_lengths(mesh, flow.metric);
        emit(m, opt.metric_edges_csv, [&](std::ostream& os) {
            write_metric_edges_csv(os, mesh, flow.metric, final_lengths);
        });
        emit(m, opt.metric_vertices_csv,
             [&](std::ostream& os) { write_metric_vertices_csv(os, mesh, flow.metric); });
        emit(m, opt.laplacian_coo, [&](std::ostream& os) {
            CornerAngles angles = corner_angles(mesh, final_lengths);
            write_matrix_coo(os, mesh, dual_laplacian(mesh, flow.metric, final_lengths, angles));
        });

        if (!flow.converged) {
            m.status = "not_converged";
        } else {
            // Tori are sliced open only now, after the flow.
            Mesh work_mesh;
            std::vector<double> flat;
            std::vector<int> seam;
            if (config.boundary == BoundaryMode::ClosedGenusOne) {
                CutMesh cut = cut_to_disk(mesh);
                PackingMetric cut_metric = metric_for_cut(cut, mesh, flow.metric);
                flat = edge_lengths(cut.mesh, cut_metric);
                seam = std::move(cut.source_vertex);
                work_mesh = std::move(cut.mesh);
            } else {
                work_mesh = std::move(mesh);
                flat = std::move(final_lengths);
            }

            Parameterization param = embed(work_mesh, flat);
            param.seam_to_original = std::move(seam);
            m.max_edge_error = param.max_edge_error;

            ConformalityReport report =
                analyze(work_mesh, param, HistogramConfig{0.5, 1.5, opt.histogram_bins});
            m.mean_rel_angle_error = report.mean_rel_angle_error;
            m.flipped_faces = report.flipped_faces;

            emit(m, opt.report_csv, [&](std::ostream& os) { write_report_csv(os, report); });
            emit(m, opt.uv_csv, [&](std::ostream& os) {
                os << "vertex,u,v\n";
                char buf[96];
                for (int v = 0; v < work_mesh.n_vertices(); ++v) {
                    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", v, param.uv[v].x,
                                  param.uv[v].y);
                    os << buf;
                }
            });

            std::vector<Vec2> unit_uv = param.uv;
            UvNormalization norm = normalize_uv(unit_uv);
            m.uv_scale = norm.scale;
            emit(m, opt.out_obj,
                 [&](std::ostream& os) { write_obj(os, work_mesh, &unit_uv); });
            emit(m, opt.svg_path, [&](std::ostream& os) {
                os << checkerboard_svg(param, work_mesh.faces, opt.svg_cells);
            });

            std::ostringstream os;
            os << "embedded " << work_mesh.n_faces() << " faces, max edge error "
               << param.max_edge_error << ", mean angle error " << report.mean_rel_angle_error;
            log_info(os.str());
            m.status = "ok";
        }
    } catch (const std::exception& e) {
        m.status = "error";
        m.error = e.what();
        log_info(std::string("error: ") + e.what());
    }

    m.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (!opt.manifest_path.empty()) {
        try {
            write_text_file(opt.manifest_path, m.to_json());
        } catch (const std::exception& e) {
            log_info(std::string("manifest: ") + e.what());
        }
    }
    return m;
}

int exit_status(const RunManifest& m) { return m.status == "ok" ? 0 : 1; }

void run_analyze(const AnalyzeOptions& opt) {
    ObjWithUv obj = load_obj_with_uv(opt.input);
    if (!obj.has_uv) fail(opt.input, ": missing vt records");
    ConformalityReport report =
        analyze_corner_uv(obj.mesh, obj.corner_uv, HistogramConfig{0.5, 1.5, opt.histogram_bins});
    {
        std::ostringstream os;
        os << "mean relative angle error " << report.mean_rel_angle_error << ", flipped faces "
           << report.flipped_faces;
        log_info(os.str());
    }
    if (!opt.report_csv.empty()) {
        std::ofstream os(opt.report_csv);
        if (!os) fail("cannot write '", opt.report_csv, "'");
        write_report_csv(os, report);
    }
}

} // namespace calabi
