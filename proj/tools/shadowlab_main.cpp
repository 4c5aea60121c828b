#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "shadowlab/experiment.hpp"
#include "shadowlab/serialize.hpp"
#include "shadowlab/transition_graph.hpp"

using namespace shadowlab;

namespace {

int cmd_run(const std::string& config_path, const std::vector<std::string>& formats) {
    ExperimentSpec spec;
    try {
        spec = load_experiment(config_path);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    }
    try {
        Report report = run_suite(spec);
        emit_report(report, spec.output_dir, formats);
        for (const auto& v : report.verdicts)
            std::cout << v.claim_id << ": " << verdict_status_name(v.status)
                      << " (statistic " << format_double(v.statistic) << ", threshold "
                      << format_double(v.threshold) << ")"
                      << (v.note.empty() ? "" : "  [" + v.note + "]") << "\n";
        std::cout << "report written to " << spec.output_dir << "/report.json\n";
        return report.exit_code();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config) {
            std::cerr << "config error: " << e.what() << "\n";
            return 3;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_claims() {
    for (const auto& c : claim_registry()) {
        std::cout << c.id << "\n    " << c.summary << "\n    op: " << c.op_ref << "\n    suites:";
        for (Suite s : c.suites) std::cout << " " << suite_name(s);
        std::cout << "\n";
    }
    return 0;
}

int cmd_catalog() {
    for (const auto& [kind, blurb] : catalog_entries())
        std::cout << kind << "\n    " << blurb << "\n";
    return 0;
}

int cmd_graph(const std::string& config_path) {
    ExperimentSpec spec;
    try {
        spec = load_experiment(config_path);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    }
    try {
        SmoothSystem sys = build_system(spec.system);
        auto region = default_region(sys);
        int depth = static_cast<int>(spec.param_or("depth", 5));
        BoxCover cover(sys.chart, region.first, region.second, depth);
        TransitionParams params;
        params.t_step = spec.param_or("t_step", 1.0);
        params.samples_per_box = static_cast<int>(spec.param_or("samples_per_box", 8));
        auto tg = build_transition_graph(sys, cover, params, spec.seed);
        std::filesystem::create_directories(spec.output_dir);
        std::ofstream edges(std::filesystem::path(spec.output_dir) / "edges.csv");
        edges << edge_list_csv(tg);
        std::ofstream boxes(std::filesystem::path(spec.output_dir) / "boxes.json");
        boxes << box_geometry_json(cover).dump(2) << "\n";
        std::cout << "graph: " << tg.graph.n << " nodes written to " << spec.output_dir << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shadowlab: pseudo-orbit shadowing and chain dynamics laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> formats = {"json", "csv"};

    auto* run = app.add_subcommand("run", "run a verification suite from a config file");
    run->add_option("config", config_path, "TOML or JSON experiment config")->required();
    run->add_option("--format", formats, "report formats (json, csv)");

    auto* claims = app.add_subcommand("claims", "list the claim registry");
    auto* catalog = app.add_subcommand("catalog", "list the built-in system catalog");

    auto* graph = app.add_subcommand("graph", "emit the transition graph for a config");
    graph->add_option("config", config_path, "TOML or JSON experiment config")->required();

    // SHADOWLAB_THREADS caps worker threads; everything here is currently
    // sequential and deterministic, so the variable is accepted and ignored
    // beyond validation.
    if (const char* threads = std::getenv("SHADOWLAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(threads, &end, 10);
        if (end == threads || v < 1) {
            std::cerr << "config error: SHADOWLAB_THREADS must be a positive integer\n";
            return 3;
        }
    }

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, formats);
    if (claims->parsed()) return cmd_claims();
    if (catalog->parsed()) return cmd_catalog();
    if (graph->parsed()) return cmd_graph(config_path);
    return 0;
}
