// Command-line front end: seeded experiments over the benchmark suite,
// statistics tables, and convergence plots.

#include <filesystem>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "convpoint/harness/config.hpp"
#include "convpoint/harness/experiment.hpp"
#include "convpoint/harness/plot.hpp"
#include "convpoint/harness/report.hpp"

namespace fs = std::filesystem;
using namespace convpoint;

namespace {

int cmd_run(const std::string& config_path, const std::string& output_override, int jobs,
            bool overwrite, const harness::CellFilter& filter) {
    harness::ExperimentConfig config = harness::load_config(config_path);
    const std::string out_dir = output_override.empty() ? config.output_dir : output_override;

    std::cerr << "running " << config.dimensions.size() << " dimension(s) x "
              << (config.functions.empty() ? bench::suite_size()
                                           : static_cast<int>(config.functions.size()))
              << " function(s) x " << config.algorithms.size() << " algorithm(s) x "
              << config.trials << " trial(s)\n";

    harness::ExperimentResults results = harness::run_experiment(config, jobs, filter);
    harness::persist_results(results, config, out_dir, overwrite);

    int failed = 0;
    for (const auto& o : results.outcomes) failed += o.failed ? 1 : 0;
    std::cerr << results.outcomes.size() << " runs -> " << out_dir;
    if (failed > 0) std::cerr << " (" << failed << " failed, see failures.csv)";
    std::cerr << '\n';
    return failed > 0 ? 2 : 0;
}

int cmd_report(const std::string& results_dir, const std::string& output_override) {
    const std::string out_dir = output_override.empty() ? results_dir : output_override;
    auto rows = harness::parse_results_csv(
        harness::read_lines((fs::path(results_dir) / "results.csv").string()));
    harness::ComparisonReport report = harness::build_report(rows);
    harness::emit_tables(report, harness::TableFormat::csv, out_dir);
    harness::emit_tables(report, harness::TableFormat::aligned_text, out_dir);
    std::cerr << "report over " << report.cells.size() << " cells -> " << out_dir
              << "/{summary,kruskal,pairwise}.csv, {summary,significance}.txt\n";
    return 0;
}

int cmd_plot(const std::string& results_dir, const std::string& function, int dimension,
             const std::string& output_override) {
    const std::size_t findex = harness::ExperimentConfig::resolve_function_index(function);
    const std::string fname = bench::suite_function_name(static_cast<int>(findex));

    // bias from the manifest of this run
    double bias = 0.0;
    bool bias_found = false;
    for (const auto& line :
         harness::read_lines((fs::path(results_dir) / "manifest.csv").string())) {
        auto f = harness::split_csv_line(line);
        if (f.size() >= 5 && f[0] == fname && f[4] == std::to_string(dimension)) {
            bias = harness::parse_double(f[2]);
            bias_found = true;
        }
    }
    if (!bias_found) {
        std::cerr << "error: " << fname << " at " << dimension
                  << "-D not found in manifest.csv\n";
        return 1;
    }

    // algorithm column order from results.csv
    auto rows = harness::parse_results_csv(
        harness::read_lines((fs::path(results_dir) / "results.csv").string()));
    std::vector<std::string> algorithms;
    for (const auto& r : rows)
        if (r.function == fname && r.dimension == dimension &&
            std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end())
            algorithms.push_back(r.algorithm);

    std::vector<std::pair<std::string, std::vector<std::vector<HistoryPoint>>>> histories;
    for (const auto& algo : algorithms) {
        std::vector<std::vector<HistoryPoint>> trials;
        for (int t = 0;; ++t) {
            fs::path file = fs::path(results_dir) / "history" /
                            harness::history_file_name(fname, dimension, algo, t);
            if (!fs::exists(file)) break;
            std::vector<HistoryPoint> points;
            auto lines = harness::read_lines(file.string());
            for (std::size_t i = 1; i < lines.size(); ++i) {
                if (lines[i].empty()) continue;
                auto f = harness::split_csv_line(lines[i]);
                points.push_back({std::stoll(f[0]), harness::parse_double(f[1])});
            }
            trials.push_back(std::move(points));
        }
        if (!trials.empty()) histories.emplace_back(algo, std::move(trials));
    }

    std::ostringstream default_stem;
    default_stem << (fs::path(results_dir) / "plot_").string() << fname << '_' << dimension
                 << 'D';
    const std::string stem = output_override.empty() ? default_stem.str() : output_override;
    if (!harness::emit_convergence_plot(histories, fname, dimension, bias, stem)) {
        std::cerr << "warning: no history found for " << fname << " at " << dimension
                  << "-D; nothing plotted (was the run saved with save_history?)\n";
        return 1;
    }
    std::cerr << "wrote " << stem << ".svg and " << stem << ".csv\n";
    return 0;
}

int cmd_list_functions(int dimension, std::uint64_t seed) {
    std::cout << harness::manifest_csv(bench::suite_specs(dimension, seed));
    return 0;
}

int cmd_validate(const std::string& config_path) {
    harness::ExperimentConfig config = harness::load_config(config_path);
    std::cout << "config ok\n";
    std::cout << "  master_seed: " << config.master_seed << "\n  trials: " << config.trials
              << "\n  dimensions:";
    for (int d : config.dimensions) std::cout << ' ' << d;
    std::cout << "\n  functions: "
              << (config.functions.empty() ? "all " + std::to_string(bench::suite_size())
                                           : std::to_string(config.functions.size()))
              << "\n  algorithms:";
    for (const auto& a : config.algorithms) std::cout << ' ' << a.name();
    std::cout << "\n  output_dir: " << config.output_dir
              << "\n  save_history: " << (config.save_history ? "true" : "false") << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convpoint: convergence-point accelerated optimization experiments"};
    app.require_subcommand(1);

    std::string config_path, output, results_dir, function;
    int jobs = 1, dimension = 2;
    std::uint64_t seed = 1;
    bool overwrite = false;
    harness::CellFilter filter;

    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("-c,--config", config_path, "experiment config (json)")->required();
    run->add_option("-o,--output", output, "output directory (overrides config)");
    run->add_option("-j,--jobs", jobs, "number of worker threads")->default_val(1);
    run->add_flag("--overwrite", overwrite, "allow writing into a non-empty directory");
    run->add_option("--function", filter.functions, "restrict to these functions");
    run->add_option("--algorithm", filter.algorithms, "restrict to these algorithms");
    run->add_option("--dimension", filter.dimensions, "restrict to these dimensions");

    auto* report = app.add_subcommand("report", "build statistics tables from results");
    report->add_option("results_dir", results_dir, "directory with results.csv")->required();
    report->add_option("-o,--output", output, "directory for the tables");

    auto* plot = app.add_subcommand("plot", "emit a convergence plot for one cell");
    plot->add_option("results_dir", results_dir, "directory with results + history")->required();
    plot->add_option("-f,--function", function, "function name or id (e.g. f01)")->required();
    plot->add_option("-d,--dimension", dimension, "dimension")->required();
    plot->add_option("-o,--output", output, "output stem (writes stem.svg + stem.csv)");

    auto* list = app.add_subcommand("list-functions", "print the suite manifest");
    list->add_option("-d,--dimension", dimension, "dimension")->default_val(2);
    list->add_option("-s,--seed", seed, "suite master seed")->default_val(1);

    auto* validate = app.add_subcommand("validate-config", "check a config file");
    validate->add_option("config", config_path, "experiment config (json)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, output, jobs, overwrite, filter);
        if (report->parsed()) return cmd_report(results_dir, output);
        if (plot->parsed()) return cmd_plot(results_dir, function, dimension, output);
        if (list->parsed()) return cmd_list_functions(dimension, seed);
        if (validate->parsed()) return cmd_validate(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
