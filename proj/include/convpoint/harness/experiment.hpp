#pragma once

#include <atomic>
#include <filesystem>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "convpoint/harness/config.hpp"
#include "convpoint/harness/io.hpp"
#include "convpoint/optimizers/run.hpp"

namespace convpoint::harness {

constexpr std::uint64_t kTrialTag = 0x7472u;  // domain separation for trial seeds

/// Seed of one trial. Deliberately independent of the algorithm (and the
/// dimension), so that every algorithm replays the same trial-seed family
/// per function and comparisons are paired.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t function_index,
                                int trial) {
    return derive_seed(master_seed, {kTrialTag, function_index,
                                     static_cast<std::uint64_t>(trial)});
}

/// One row of results.csv.
struct ResultRow {
    std::string algorithm;
    std::string function;
    int dimension = 0;
    std::uint64_t seed = 0;
    std::int64_t evaluations = 0;
    double best_fitness = 0.0;
};

struct RunOutcome {
    ResultRow row;
    std::vector<HistoryPoint> history;
    std::vector<EstimateLogEntry> estimates;
    int trial = 0;
    bool failed = false;
    std::string error;
};

struct CellFilter {
    std::vector<std::string> functions;   // empty = all
    std::vector<std::string> algorithms;  // empty = all
    std::vector<int> dimensions;          // empty = all

    bool admits_function(const std::string& name) const {
        if (functions.empty()) return true;
        for (const auto& f : functions)
            if (ExperimentConfig::resolve_function_index(f) ==
                ExperimentConfig::resolve_function_index(name))
                return true;
        return false;
    }
    bool admits_algorithm(const std::string& name) const {
        return algorithms.empty() ||
               std::find(algorithms.begin(), algorithms.end(), name) != algorithms.end();
    }
    bool admits_dimension(int d) const {
        return dimensions.empty() ||
               std::find(dimensions.begin(), dimensions.end(), d) != dimensions.end();
    }
};

struct ExperimentResults {
    std::vector<RunOutcome> outcomes;  // canonical order: dim, function, algorithm, trial
    std::vector<bench::BenchmarkSpec> manifest;
};

namespace detail {

struct PlannedRun {
    const Problem* problem;
    std::size_t function_index;  // canonical suite index
    const AlgorithmSetting* algorithm;
    int dimension;
    int trial;
    std::uint64_t seed;
};

inline RunOutcome execute(const PlannedRun& plan, std::int64_t history_stride) {
    RunOutcome out;
    out.trial = plan.trial;
    out.row.algorithm = plan.algorithm->name();
    out.row.function = plan.problem->name;
    out.row.dimension = plan.dimension;
    out.row.seed = plan.seed;
    try {
        Budget budget(default_budget(plan.dimension));
        RngStream rng(plan.seed);
        RunRecord rec;
        if (plan.algorithm->accelerated()) {
            AcceleratedConfig cfg = plan.algorithm->accel;
            rec = run_accelerated_de(*plan.problem, cfg, budget, rng);
        } else {
            rec = run_optimizer(*plan.problem, plan.algorithm->opt, budget, rng);
        }
        out.row.evaluations = rec.evaluations_used;
        out.row.best_fitness = rec.best_fitness;
        out.history = std::move(rec.history);
        out.estimates = std::move(rec.estimates);
        if (history_stride > 0) {
            // thin the recorded points down to the requested stride
            std::vector<HistoryPoint> thinned;
            for (const auto& hp : out.history)
                if (hp.evaluations % history_stride == 0 ||
                    hp.evaluations == out.row.evaluations)
                    thinned.push_back(hp);
            out.history = std::move(thinned);
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

}  // namespace detail

/// Runs the full cartesian experiment (dimensions x functions x algorithms
/// x trials). Independent runs may execute on `parallelism` threads; the
/// result order is canonical regardless, so output bytes never depend on
/// scheduling. Failed runs are recorded, not fatal.
inline ExperimentResults run_experiment(const ExperimentConfig& config, int parallelism = 1,
                                        const CellFilter& filter = {}) {
    config.validate();
    ExperimentResults results;

    // resolve the function subset once, as canonical suite indices
    std::vector<std::size_t> function_indices;
    if (config.functions.empty()) {
        for (int i = 0; i < bench::suite_size(); ++i)
            function_indices.push_back(static_cast<std::size_t>(i));
    } else {
        for (const auto& name : config.functions)
            function_indices.push_back(ExperimentConfig::resolve_function_index(name));
        std::sort(function_indices.begin(), function_indices.end());
        function_indices.erase(
            std::unique(function_indices.begin(), function_indices.end()),
            function_indices.end());
    }

    std::vector<std::vector<Problem>> problems_by_dim;
    std::vector<detail::PlannedRun> plans;
    for (int dim : config.dimensions) {
        if (!filter.admits_dimension(dim)) continue;
        auto specs = bench::suite_specs(dim, config.master_seed);
        std::vector<Problem> problems;
        problems.reserve(specs.size());
        for (const auto& s : specs) problems.push_back(bench::make_problem(s));
        problems_by_dim.push_back(std::move(problems));
        const auto& probs = problems_by_dim.back();
        for (const auto& s : specs) results.manifest.push_back(s);

        for (std::size_t fi : function_indices) {
            if (!filter.admits_function(probs[fi].name)) continue;
            for (const auto& algo : config.algorithms) {
                if (!filter.admits_algorithm(algo.name())) continue;
                for (int t = 0; t < config.trials; ++t)
                    plans.push_back({&probs[fi], fi, &algo, dim, t,
                                     trial_seed(config.master_seed, fi, t)});
            }
        }
    }

    results.outcomes.resize(plans.size());
    if (parallelism <= 1) {
        for (std::size_t i = 0; i < plans.size(); ++i)
            results.outcomes[i] = detail::execute(plans[i], config.history_stride);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= plans.size()) return;
                results.outcomes[i] = detail::execute(plans[i], config.history_stride);
            }
        };
        std::vector<std::thread> threads;
        const int n = std::min<int>(parallelism, static_cast<int>(plans.size()));
        threads.reserve(n);
        for (int i = 0; i < n; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    return results;
}

inline std::string manifest_csv(const std::vector<bench::BenchmarkSpec>& manifest) {
    std::ostringstream out;
    out << "name,base,bias,seed,dimension,rotated\n";
    for (const auto& s : manifest)
        out << s.name << ',' << bench::base_name(s.base) << ',' << format_double(s.bias)
            << ',' << s.seed << ',' << s.dimension << ',' << (s.rotation ? 1 : 0) << '\n';
    return out.str();
}

inline std::string results_csv(const std::vector<RunOutcome>& outcomes) {
    std::ostringstream out;
    out << "algorithm,function,dimension,seed,evaluations,best_fitness\n";
    for (const auto& o : outcomes) {
        if (o.failed) continue;
        out << o.row.algorithm << ',' << o.row.function << ',' << o.row.dimension << ','
            << o.row.seed << ',' << o.row.evaluations << ','
            << format_double(o.row.best_fitness) << '\n';
    }
    return out.str();
}

inline std::vector<ResultRow> parse_results_csv(const std::vector<std::string>& lines) {
    if (lines.empty() || lines[0] != "algorithm,function,dimension,seed,evaluations,best_fitness")
        throw std::runtime_error("results csv: missing or wrong header");
    std::vector<ResultRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 6)
            throw std::runtime_error("results csv: bad row " + std::to_string(i + 1));
        ResultRow r;
        r.algorithm = f[0];
        r.function = f[1];
        r.dimension = std::stoi(f[2]);
        r.seed = std::stoull(f[3]);
        r.evaluations = std::stoll(f[4]);
        r.best_fitness = parse_double(f[5]);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string history_file_name(const std::string& function, int dimension,
                                     const std::string& algorithm, int trial) {
    std::ostringstream name;
    name << function << '_' << dimension << "D_" << algorithm << "_t" << trial << ".csv";
    return name.str();
}

/// Writes manifest.csv, results.csv, failures.csv (if any) and, when
/// enabled, one history file per run under history/. Refuses to touch a
/// non-empty directory unless overwrite is set.
inline void persist_results(const ExperimentResults& results, const ExperimentConfig& config,
                            const std::string& out_dir, bool overwrite) {
    namespace fs = std::filesystem;
    fs::path dir(out_dir);
    if (fs::exists(dir) && !fs::is_empty(dir) && !overwrite)
        throw std::runtime_error("output directory '" + out_dir +
                                 "' is not empty (use --overwrite to replace)");
    fs::create_directories(dir);

    write_file((dir / "manifest.csv").string(), manifest_csv(results.manifest));
    write_file((dir / "results.csv").string(), results_csv(results.outcomes));

    std::ostringstream failures;
    int failure_count = 0;
    failures << "algorithm,function,dimension,trial,error\n";
    for (const auto& o : results.outcomes)
        if (o.failed) {
            failures << o.row.algorithm << ',' << o.row.function << ',' << o.row.dimension
                     << ',' << o.trial << ',' << o.error << '\n';
            ++failure_count;
        }
    if (failure_count > 0)
        write_file((dir / "failures.csv").string(), failures.str());

    if (config.save_history) {
        fs::create_directories(dir / "history");
        for (const auto& o : results.outcomes) {
            if (o.failed) continue;
            std::ostringstream h;
            h << "evaluations,best_so_far\n";
            for (const auto& hp : o.history)
                h << hp.evaluations << ',' << format_double(hp.best_so_far) << '\n';
            write_file((dir / "history" /
                        history_file_name(o.row.function, o.row.dimension, o.row.algorithm,
                                          o.trial))
                           .string(),
                       h.str());
            if (!o.estimates.empty()) {
                std::ostringstream e;
                e << "generation,method,fitness,coordinates\n";
                for (const auto& entry : o.estimates) {
                    e << entry.generation << ',' << entry.method << ','
                      << format_double(entry.fitness) << ',';
                    for (std::size_t d = 0; d < entry.coordinates.size(); ++d)
                        e << (d ? " " : "") << format_double(entry.coordinates[d]);
                    e << '\n';
                }
                std::string name = history_file_name(o.row.function, o.row.dimension,
                                                     o.row.algorithm, o.trial);
                name.replace(name.size() - 4, 4, "_estimates.csv");
                write_file((dir / "history" / name).string(), e.str());
            }
        }
    }
}

}  // namespace convpoint::harness
