#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "convpoint/population.hpp"
#include "convpoint/problem.hpp"

namespace convpoint {

enum class Algorithm { rs, ga, de, es, pso };

enum class DeStrategy { rand_1, best_1, current_to_best_1 };

inline const char* de_strategy_name(DeStrategy s) {
    switch (s) {
        case DeStrategy::rand_1: return "rand/1";
        case DeStrategy::best_1: return "best/1";
        case DeStrategy::current_to_best_1: return "current-to-best/1";
    }
    throw std::invalid_argument("de_strategy_name: unknown strategy");
}

/// Parameters for the five baseline optimizers. Defaults follow the
/// standard benchmark settings used throughout this library: population
/// 50 x D, DE/current-to-best/1 with F = 0.7 and CR = 0.9, elitist GA with
/// crossover 0.5 / mutation 0.1, (1+1)-ES strength 0.2 (fraction of the
/// domain width), PSO with w = 0.9 and c1 = c2 = 2.
struct OptimizerConfig {
    Algorithm algorithm = Algorithm::de;
    int population_size = 0;  // 0 = 50 x dimension

    double de_scale_factor = 0.7;
    double de_crossover_rate = 0.9;
    DeStrategy de_strategy = DeStrategy::current_to_best_1;

    double ga_crossover_rate = 0.5;
    double ga_mutation_rate = 0.1;

    double es_mutation_strength = 0.2;

    double pso_inertia = 0.9;
    double pso_c1 = 2.0;
    double pso_c2 = 2.0;

    // neighborhood sampling around the incumbent instead of uniform draws
    bool rs_neighborhood = false;

    int resolve_population_size(int dimension) const {
        return population_size > 0 ? population_size : 50 * dimension;
    }

    void validate(int dimension) const {
        auto rate = [](double v, const char* key) {
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument(std::string(key) + " must be in [0, 1]");
        };
        rate(de_crossover_rate, "de_crossover_rate");
        rate(ga_crossover_rate, "ga_crossover_rate");
        rate(ga_mutation_rate, "ga_mutation_rate");
        if (de_scale_factor <= 0.0)
            throw std::invalid_argument("de_scale_factor must be > 0");
        if (es_mutation_strength < 0.0)
            throw std::invalid_argument("es_mutation_strength must be >= 0");
        if (algorithm == Algorithm::de && resolve_population_size(dimension) < 4)
            throw std::invalid_argument("DE needs population_size >= 4");
        if (resolve_population_size(dimension) < 1)
            throw std::invalid_argument("population_size must be >= 1");
    }
};

/// Default evaluation budget: 1000 x dimension.
inline std::int64_t default_budget(int dimension) { return 1000LL * dimension; }

struct HistoryPoint {
    std::int64_t evaluations;
    double best_so_far;
};

/// One logged convergence-point estimate (accelerated runs only, opt-in).
struct EstimateLogEntry {
    int generation = 0;
    std::string method;  // "AS" or "WAS"
    Genome coordinates;
    double fitness = 0.0;
};

/// Per-run outcome: overall best plus the best-so-far convergence history.
struct RunRecord {
    Genome best_genome;
    double best_fitness = 0.0;
    std::vector<HistoryPoint> history;
    std::int64_t evaluations_used = 0;
    std::uint64_t seed = 0;
    std::vector<EstimateLogEntry> estimates;  // empty unless logging is on
};

/// Observes every objective evaluation of a run, in order, and maintains
/// the best-so-far value plus a history point each time the evaluation
/// count crosses a stride boundary. The final point is always appended so
/// the history ends at (evaluations_used, best_fitness).
class RunTracker {
public:
    explicit RunTracker(std::int64_t stride) : stride_(stride > 0 ? stride : 1) {}

    void observe(const Genome& genome, double fitness) {
        ++count_;
        if (fitness < best_) {
            best_ = fitness;
            best_genome_ = genome;
        }
        if (count_ % stride_ == 0) history_.push_back({count_, best_});
    }

    double best() const { return best_; }
    std::int64_t count() const { return count_; }

    RunRecord finish(std::uint64_t seed) {
        if (history_.empty() || history_.back().evaluations != count_)
            history_.push_back({count_, best_});
        RunRecord rec;
        rec.best_genome = std::move(best_genome_);
        rec.best_fitness = best_;
        rec.history = std::move(history_);
        rec.evaluations_used = count_;
        rec.seed = seed;
        return rec;
    }

private:
    std::int64_t stride_;
    std::int64_t count_ = 0;
    double best_ = std::numeric_limits<double>::infinity();
    Genome best_genome_;
    std::vector<HistoryPoint> history_;
};

}  // namespace convpoint
