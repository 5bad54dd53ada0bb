#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "convpoint/accelerated.hpp"
#include "convpoint/benchmarks.hpp"
#include "convpoint/optimizers/config.hpp"

namespace convpoint::harness {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The eight algorithm columns an experiment can run. de_best1 is the
/// DE/best/1 strategy ablation of plain DE.
enum class AlgorithmKind { rs, ga, de, de_best1, es, pso, p1, p2 };

inline const char* kind_name(AlgorithmKind kind) {
    switch (kind) {
        case AlgorithmKind::rs: return "rs";
        case AlgorithmKind::ga: return "ga";
        case AlgorithmKind::de: return "de";
        case AlgorithmKind::de_best1: return "de_best1";
        case AlgorithmKind::es: return "es";
        case AlgorithmKind::pso: return "pso";
        case AlgorithmKind::p1: return "p1";
        case AlgorithmKind::p2: return "p2";
    }
    throw ConfigError("unknown algorithm kind");
}

inline AlgorithmKind kind_from_name(const std::string& name) {
    for (AlgorithmKind k : {AlgorithmKind::rs, AlgorithmKind::ga, AlgorithmKind::de,
                            AlgorithmKind::de_best1, AlgorithmKind::es, AlgorithmKind::pso,
                            AlgorithmKind::p1, AlgorithmKind::p2})
        if (name == kind_name(k)) return k;
    throw ConfigError("unknown algorithm name: '" + name + "'");
}

/// One resolved algorithm column: baseline settings always, accelerated
/// settings for p1/p2.
struct AlgorithmSetting {
    AlgorithmKind kind = AlgorithmKind::de;
    OptimizerConfig opt;       // for baselines
    AcceleratedConfig accel;   // for p1/p2

    std::string name() const { return kind_name(kind); }
    bool accelerated() const { return kind == AlgorithmKind::p1 || kind == AlgorithmKind::p2; }
};

struct ExperimentConfig {
    std::uint64_t master_seed = 1;
    int trials = 30;
    std::vector<int> dimensions = {2, 10, 30};
    std::vector<std::string> functions;  // empty = whole suite
    std::string output_dir = "results";
    std::int64_t history_stride = 0;  // 0 = population size (per generation)
    bool save_history = true;
    std::vector<AlgorithmSetting> algorithms;

    void validate() const {
        if (trials < 1) throw ConfigError("'trials' must be >= 1");
        if (dimensions.empty()) throw ConfigError("'dimensions' must not be empty");
        for (int d : dimensions)
            if (d < 1) throw ConfigError("'dimensions' entries must be >= 1");
        if (history_stride < 0) throw ConfigError("'history_stride' must be >= 0");
        if (algorithms.size() < 1) throw ConfigError("'algorithms' must not be empty");
        std::set<std::string> seen;
        for (const auto& a : algorithms)
            if (!seen.insert(a.name()).second)
                throw ConfigError("duplicate algorithm '" + a.name() + "'");
        for (const auto& f : functions) resolve_function_index(f);
    }

    /// Canonical suite index (0-based) for a function name; accepts the
    /// short id ("f07") or the full row name.
    static std::size_t resolve_function_index(const std::string& name) {
        for (int i = 0; i < bench::suite_size(); ++i) {
            const std::string full = bench::suite_function_name(i);
            if (name == full || (name.size() == 3 && full.rfind(name + "_", 0) == 0))
                return static_cast<std::size_t>(i);
        }
        throw ConfigError("unknown function name: '" + name + "'");
    }
};

inline std::vector<AlgorithmSetting> default_algorithms() {
    std::vector<AlgorithmSetting> out;
    for (AlgorithmKind k : {AlgorithmKind::rs, AlgorithmKind::ga, AlgorithmKind::de,
                            AlgorithmKind::de_best1, AlgorithmKind::es, AlgorithmKind::pso,
                            AlgorithmKind::p1, AlgorithmKind::p2}) {
        AlgorithmSetting s;
        s.kind = k;
        switch (k) {
            case AlgorithmKind::rs: s.opt.algorithm = Algorithm::rs; break;
            case AlgorithmKind::ga: s.opt.algorithm = Algorithm::ga; break;
            case AlgorithmKind::de: s.opt.algorithm = Algorithm::de; break;
            case AlgorithmKind::de_best1:
                s.opt.algorithm = Algorithm::de;
                s.opt.de_strategy = DeStrategy::best_1;
                break;
            case AlgorithmKind::es: s.opt.algorithm = Algorithm::es; break;
            case AlgorithmKind::pso: s.opt.algorithm = Algorithm::pso; break;
            case AlgorithmKind::p1: s.accel.variant = AcceleratedVariant::p1; break;
            case AlgorithmKind::p2: s.accel.variant = AcceleratedVariant::p2; break;
        }
        out.push_back(s);
    }
    return out;
}

namespace detail {

using nlohmann::json;

inline void require_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + context);
}

inline double number_in(const json& obj, const std::string& key, double lo, double hi,
                        double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("'" + key + "' must be a number");
    double v = obj[key].get<double>();
    if (v < lo || v > hi)
        throw ConfigError("'" + key + "' out of range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return v;
}

inline DeStrategy strategy_from_text(const std::string& text) {
    if (text == "rand/1" || text == "rand_1") return DeStrategy::rand_1;
    if (text == "best/1" || text == "best_1") return DeStrategy::best_1;
    if (text == "current-to-best/1" || text == "current_to_best_1")
        return DeStrategy::current_to_best_1;
    throw ConfigError("unknown DE strategy: '" + text + "'");
}

inline void parse_de_block(const json& block, OptimizerConfig& opt, const std::string& ctx) {
    opt.de_scale_factor = number_in(block, "scale_factor", 1e-9, 10.0, opt.de_scale_factor);
    opt.de_crossover_rate = number_in(block, "crossover_rate", 0.0, 1.0, opt.de_crossover_rate);
    if (block.contains("strategy")) {
        if (!block["strategy"].is_string())
            throw ConfigError("'strategy' must be a string in " + ctx);
        opt.de_strategy = strategy_from_text(block["strategy"].get<std::string>());
    }
}

inline AlgorithmSetting parse_algorithm(const json& block) {
    if (!block.is_object()) throw ConfigError("algorithm entries must be objects");
    if (!block.contains("name") || !block["name"].is_string())
        throw ConfigError("algorithm entry missing string 'name'");
    AlgorithmSetting s;
    s.kind = kind_from_name(block["name"].get<std::string>());
    const std::string ctx = "algorithm '" + s.name() + "'";

    std::set<std::string> allowed = {"name", "population_size"};
    switch (s.kind) {
        case AlgorithmKind::rs:
            s.opt.algorithm = Algorithm::rs;
            allowed.insert("neighborhood");
            break;
        case AlgorithmKind::ga:
            s.opt.algorithm = Algorithm::ga;
            allowed.insert({"crossover_rate", "mutation_rate"});
            break;
        case AlgorithmKind::de:
        case AlgorithmKind::de_best1:
            s.opt.algorithm = Algorithm::de;
            allowed.insert({"scale_factor", "crossover_rate", "strategy"});
            break;
        case AlgorithmKind::es:
            s.opt.algorithm = Algorithm::es;
            allowed.insert("mutation_strength");
            break;
        case AlgorithmKind::pso:
            s.opt.algorithm = Algorithm::pso;
            allowed.insert({"inertia", "c1", "c2"});
            break;
        case AlgorithmKind::p1:
        case AlgorithmKind::p2:
            allowed.insert({"scale_factor", "crossover_rate", "strategy", "elite_rate",
                            "sigma", "samples", "was_mode", "log_estimates"});
            break;
    }
    require_keys(block, allowed, ctx);

    if (block.contains("population_size")) {
        if (!block["population_size"].is_number_integer())
            throw ConfigError("'population_size' must be an integer in " + ctx);
        int ps = block["population_size"].get<int>();
        if (ps < 1) throw ConfigError("'population_size' must be >= 1 in " + ctx);
        s.opt.population_size = ps;
    }

    switch (s.kind) {
        case AlgorithmKind::rs:
            if (block.contains("neighborhood")) {
                if (!block["neighborhood"].is_boolean())
                    throw ConfigError("'neighborhood' must be a boolean in " + ctx);
                s.opt.rs_neighborhood = block["neighborhood"].get<bool>();
            }
            break;
        case AlgorithmKind::ga:
            s.opt.ga_crossover_rate =
                number_in(block, "crossover_rate", 0.0, 1.0, s.opt.ga_crossover_rate);
            s.opt.ga_mutation_rate =
                number_in(block, "mutation_rate", 0.0, 1.0, s.opt.ga_mutation_rate);
            break;
        case AlgorithmKind::de:
            parse_de_block(block, s.opt, ctx);
            break;
        case AlgorithmKind::de_best1:
            s.opt.de_strategy = DeStrategy::best_1;
            parse_de_block(block, s.opt, ctx);
            break;
        case AlgorithmKind::es:
            s.opt.es_mutation_strength =
                number_in(block, "mutation_strength", 0.0, 1.0, s.opt.es_mutation_strength);
            break;
        case AlgorithmKind::pso:
            s.opt.pso_inertia = number_in(block, "inertia", 0.0, 2.0, s.opt.pso_inertia);
            s.opt.pso_c1 = number_in(block, "c1", 0.0, 10.0, s.opt.pso_c1);
            s.opt.pso_c2 = number_in(block, "c2", 0.0, 10.0, s.opt.pso_c2);
            break;
        case AlgorithmKind::p1:
        case AlgorithmKind::p2: {
            s.accel.variant =
                s.kind == AlgorithmKind::p1 ? AcceleratedVariant::p1 : AcceleratedVariant::p2;
            parse_de_block(block, s.accel.de, ctx);
            s.accel.de.population_size = s.opt.population_size;
            s.accel.elite_rate = number_in(block, "elite_rate", 1e-9, 1.0, s.accel.elite_rate);
            s.accel.sigma = number_in(block, "sigma", 1e-12, 1e6, s.accel.sigma);
            if (block.contains("samples")) {
                if (!block["samples"].is_number_integer())
                    throw ConfigError("'samples' must be an integer in " + ctx);
                int k = block["samples"].get<int>();
                if (k < 0) throw ConfigError("'samples' must be >= 0 in " + ctx);
                s.accel.sample_count = k;
            }
            if (block.contains("log_estimates")) {
                if (!block["log_estimates"].is_boolean())
                    throw ConfigError("'log_estimates' must be a boolean in " + ctx);
                s.accel.log_estimates = block["log_estimates"].get<bool>();
            }
            if (block.contains("was_mode")) {
                const std::string mode = block["was_mode"].get<std::string>();
                if (mode == "consistent")
                    s.accel.was_mode = WeightMode::consistent;
                else if (mode == "literal")
                    s.accel.was_mode = WeightMode::literal;
                else
                    throw ConfigError("'was_mode' must be 'consistent' or 'literal' in " + ctx);
            }
            break;
        }
    }
    return s;
}

}  // namespace detail

/// Parses an experiment configuration file (JSON). Missing fields fall
/// back to the standard defaults; unknown keys are rejected with the
/// offending key named.
inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    detail::require_keys(root,
                         {"master_seed", "trials", "dimensions", "functions", "output_dir",
                          "history_stride", "save_history", "algorithms"},
                         "config root");

    ExperimentConfig cfg;
    if (root.contains("master_seed")) {
        if (!root["master_seed"].is_number_integer() || root["master_seed"].get<long long>() < 0)
            throw ConfigError("'master_seed' must be a non-negative integer");
        cfg.master_seed = root["master_seed"].get<std::uint64_t>();
    }
    if (root.contains("trials")) {
        if (!root["trials"].is_number_integer())
            throw ConfigError("'trials' must be an integer");
        cfg.trials = root["trials"].get<int>();
        if (cfg.trials < 1) throw ConfigError("'trials' must be >= 1");
    }
    if (root.contains("dimensions")) {
        if (!root["dimensions"].is_array() || root["dimensions"].empty())
            throw ConfigError("'dimensions' must be a non-empty array");
        cfg.dimensions.clear();
        for (const auto& d : root["dimensions"]) {
            if (!d.is_number_integer() || d.get<int>() < 1)
                throw ConfigError("'dimensions' entries must be integers >= 1");
            cfg.dimensions.push_back(d.get<int>());
        }
    }
    if (root.contains("functions")) {
        if (!root["functions"].is_array())
            throw ConfigError("'functions' must be an array of names");
        for (const auto& f : root["functions"]) {
            if (!f.is_string()) throw ConfigError("'functions' entries must be strings");
            cfg.functions.push_back(f.get<std::string>());
        }
    }
    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) throw ConfigError("'output_dir' must be a string");
        cfg.output_dir = root["output_dir"].get<std::string>();
    }
    if (root.contains("history_stride")) {
        if (!root["history_stride"].is_number_integer())
            throw ConfigError("'history_stride' must be an integer");
        cfg.history_stride = root["history_stride"].get<std::int64_t>();
        if (cfg.history_stride < 0) throw ConfigError("'history_stride' must be >= 0");
    }
    if (root.contains("save_history")) {
        if (!root["save_history"].is_boolean())
            throw ConfigError("'save_history' must be a boolean");
        cfg.save_history = root["save_history"].get<bool>();
    }
    if (root.contains("algorithms")) {
        if (!root["algorithms"].is_array() || root["algorithms"].empty())
            throw ConfigError("'algorithms' must be a non-empty array");
        for (const auto& a : root["algorithms"])
            cfg.algorithms.push_back(detail::parse_algorithm(a));
    } else {
        cfg.algorithms = default_algorithms();
    }
    cfg.validate();
    return cfg;
}

}  // namespace convpoint::harness
