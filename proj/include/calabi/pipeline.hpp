#pragma once
#include <string>
#include <vector>

#include "calabi/mesh.hpp"

namespace calabi {

// Options for the `param` command. Corner tokens are "v" (target pi/2) or
// "v:K" with K in radians.
struct PipelineOptions {
    std::string input;
    std::string boundary = "free"; // free | circle | rect | torus
    std::string flow = "calabi";   // calabi | ricci
    double epsilon = 1e-6;
    int max_iterations = 50000;
    double step = 0.05;
    bool backtracking = true;
    double momentum = 0.0;
    bool conjugate_gradient = false;
    std::vector<std::string> corner_tokens;
    int svg_cells = 16;
    int histogram_bins = 100;

    std::string out_obj;
    std::string trace_csv;
    std::string report_csv;
    std::string svg_path;
    std::string uv_csv;
    std::string metric_edges_csv;
    std::string metric_vertices_csv;
    std::string laplacian_coo;
    std::string manifest_path;
};

struct RunManifest {
    std::string input;
    PipelineOptions options;
    TopologyReport topo{};
    bool topo_known = false;

    std::string status = "error"; // ok | not_converged | error
    std::string error;
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    double final_energy = 0.0;
    double mean_rel_angle_error = 0.0;
    double max_edge_error = 0.0;
    int flipped_faces = 0;
    double uv_scale = 0.0;
    std::vector<std::string> outputs;
    long long wall_ms = 0;

    std::string to_json() const;
};

// load -> initial metric -> flow -> (cut) -> embed -> analyze -> artifacts.
// Never throws; failures are recorded in the manifest.
RunManifest run_pipeline(const PipelineOptions&);

// 0 iff the flow converged and the embedding succeeded.
int exit_status(const RunManifest&);

struct AnalyzeOptions {
    std::string input;
    std::string report_csv;
    int histogram_bins = 100;
};

// Statistics for an existing uv-mapped OBJ; throws on missing vt records.
void run_analyze(const AnalyzeOptions&);

} // namespace calabi
