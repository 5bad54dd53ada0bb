#pragma once

#include <optional>

#include "convpoint/estimation.hpp"
#include "convpoint/optimizers/differential_evolution.hpp"

namespace convpoint {

enum class AcceleratedVariant {
    p1,  // averaging strategy
    p2,  // weighted averaging strategy
};

/// DE plus per-generation convergence-point injection. The DE block uses
/// the regular DE defaults; elite_rate and sigma control the estimator and
/// the Gaussian sampling operator around it.
struct AcceleratedConfig {
    OptimizerConfig de;  // algorithm field ignored; strategy/F/CR/PS apply
    AcceleratedVariant variant = AcceleratedVariant::p1;
    double elite_rate = 0.05;
    double sigma = 5.0;
    /// Number of Gaussian samples per generation. nullopt = elite count;
    /// 0 disables injection entirely (the run reduces to plain DE).
    std::optional<int> sample_count;
    WeightMode was_mode = WeightMode::consistent;
    /// Record every generation's estimated point in RunRecord::estimates.
    bool log_estimates = false;

    int resolve_sample_count(int population_size) const {
        if (sample_count) return *sample_count;
        // elite-coupled default, capped so the pool rule stays valid
        const int k = static_cast<int>(elite_count(population_size, elite_rate));
        return std::min(k, population_size - 1);
    }

    void validate(int dimension) const {
        de.validate(dimension);
        if (elite_rate <= 0.0 || elite_rate > 1.0)
            throw std::invalid_argument("elite_rate must be in (0, 1]");
        if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
        const int ps = de.resolve_population_size(dimension);
        const int k = resolve_sample_count(ps);
        if (k < 0 || k >= ps)
            throw std::invalid_argument("sample_count must be in [0, population_size)");
        if (de.resolve_population_size(dimension) < 4)
            throw std::invalid_argument("accelerated DE needs population_size >= 4");
    }
};

inline const char* variant_name(AcceleratedVariant v) {
    return v == AcceleratedVariant::p1 ? "P1" : "P2";
}

/// Accelerated DE. Each generation: one synchronous DE generation, then
/// the convergence point is estimated from the survivor population (AS for
/// P1, WAS for P2), evaluated, and k Gaussian samples around it are
/// evaluated; the best k of {point, samples, k worst members} replace the
/// k worst slots. Injection is skipped when fewer than k + 1 evaluations
/// remain, so the budget is never exceeded.
///
/// Draw-schedule discipline: the DE phase consumes the caller's stream
/// exactly as run_de does, while all Gaussian sampling comes from a child
/// stream derived from the seed. With sample_count = 0 the run is
/// bit-identical to run_de under the same seed.
inline RunRecord run_accelerated_de(const Problem& problem, const AcceleratedConfig& config,
                                    Budget& budget, RngStream& rng) {
    config.validate(problem.dimension);
    const std::size_t ps =
        static_cast<std::size_t>(config.de.resolve_population_size(problem.dimension));
    const int k = config.resolve_sample_count(static_cast<int>(ps));
    RunTracker tracker(static_cast<std::int64_t>(ps));
    RngStream sampling_rng = rng.child(0x696e6a);

    Population pop = init_population(problem, ps, budget, rng);
    for (const auto& ind : pop) tracker.observe(ind.genome, ind.fitness);

    std::vector<EstimateLogEntry> estimates;
    int generation = 0;
    while (!budget.exhausted()) {
        if (!de_generation(problem, pop, config.de, budget, rng, tracker)) break;
        ++generation;
        if (k == 0 || budget.remaining() < k + 1) continue;

        EstimatedPoint point =
            config.variant == AcceleratedVariant::p1
                ? average_strategy(pop, config.elite_rate)
                : weighted_average_strategy(pop, config.elite_rate, config.was_mode);

        Individual center{clamp_to_bounds(point.coordinates, problem), 0.0};
        auto fc = evaluate(problem, center.genome, budget);
        center.fitness = *fc;  // remaining >= k + 1 was just checked
        tracker.observe(center.genome, center.fitness);
        if (config.log_estimates)
            estimates.push_back({generation,
                                 config.variant == AcceleratedVariant::p1 ? "AS" : "WAS",
                                 center.genome, center.fitness});

        std::vector<Individual> sampled;
        sampled.reserve(k);
        for (Genome& g : gaussian_sample(point, config.sigma, k, problem, sampling_rng)) {
            auto f = evaluate(problem, g, budget);
            tracker.observe(g, *f);
            sampled.push_back({std::move(g), *f});
        }
        pop = inject(std::move(pop), center, sampled);
    }
    RunRecord rec = tracker.finish(rng.seed());
    rec.estimates = std::move(estimates);
    return rec;
}

}  // namespace convpoint
