#include <iostream>

#include <CLI11.hpp>

#include "calabi/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"conformal mesh parameterization by curvature flow on circle packings"};
    app.require_subcommand(1);

    calabi::PipelineOptions popt;
    auto* param = app.add_subcommand("param", "parameterize a mesh and export artifacts");
    param->add_option("--input", popt.input, "input OBJ mesh")->required();
    param->add_option("--boundary", popt.boundary, "free | circle | rect | torus")
        ->check(CLI::IsMember({"free", "circle", "rect", "torus"}));
    param->add_option("--flow", popt.flow, "calabi | ricci")
        ->check(CLI::IsMember({"calabi", "ricci"}));
    param->add_option("--eps", popt.epsilon, "convergence threshold on max |K - K_target|");
    param->add_option("--max-iters", popt.max_iterations, "iteration budget");
    param->add_option("--step", popt.step, "step size");
    param->add_flag("!--no-backtrack", popt.backtracking,
                    "disable the strict energy-decrease check");
    param->add_option("--momentum", popt.momentum, "heavy-ball coefficient (0 disables)");
    param->add_flag("--cg", popt.conjugate_gradient,
                    "conjugate-gradient direction (keeps the energy check)");
    param->add_option("--corners", popt.corner_tokens,
                      "rect corners as v or v:K, comma separated")
        ->delimiter(',');
    param->add_option("--cells", popt.svg_cells, "checkerboard cells per UV axis");
    param->add_option("--bins", popt.histogram_bins, "angle-ratio histogram bins");
    param->add_option("--out", popt.out_obj, "output OBJ with normalized UVs");
    param->add_option("--trace", popt.trace_csv, "flow trace CSV");
    param->add_option("--report", popt.report_csv, "conformality report CSV");
    param->add_option("--svg", popt.svg_path, "checkerboard SVG");
    param->add_option("--uv-csv", popt.uv_csv, "raw UV coordinates CSV");
    param->add_option("--metric-edges", popt.metric_edges_csv, "final metric edge CSV");
    param->add_option("--metric-vertices", popt.metric_vertices_csv,
                      "final conformal factors CSV");
    param->add_option("--laplacian", popt.laplacian_coo,
                      "final dual Laplacian, coordinate format");
    param->add_option("--manifest", popt.manifest_path, "run manifest JSON");

    calabi::AnalyzeOptions aopt;
    auto* analyze = app.add_subcommand("analyze", "angle statistics of a uv-mapped OBJ");
    analyze->add_option("--input", aopt.input, "OBJ with vt records")->required();
    analyze->add_option("--report", aopt.report_csv, "conformality report CSV");
    analyze->add_option("--bins", aopt.histogram_bins, "angle-ratio histogram bins");

    CLI11_PARSE(app, argc, argv);

    if (*param) {
        calabi::RunManifest manifest = calabi::run_pipeline(popt);
        return calabi::exit_status(manifest);
    }
    try {
        calabi::run_analyze(aopt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
