#pragma once

#include "convpoint/optimizers/config.hpp"
#include "convpoint/population.hpp"

namespace convpoint {

namespace detail {

// Binary tournament; equal fitness goes to the lower index.
inline std::size_t tournament_pick(const Population& pop, RngStream& rng) {
    std::size_t a = rng.uniform_index(pop.size());
    std::size_t b = rng.uniform_index(pop.size());
    if (pop[b].fitness < pop[a].fitness) return b;
    if (pop[a].fitness < pop[b].fitness) return a;
    return std::min(a, b);
}

}  // namespace detail

/// Elitist generational GA: binary tournaments, uniform crossover applied
/// with probability ga_crossover_rate (each gene then picked 50/50 between
/// the parents), per-gene Gaussian mutation at ga_mutation_rate with
/// sigma = 0.05 x range, and the best member carried over unconditionally
/// with its cached fitness (no re-evaluation).
inline RunRecord run_ga(const Problem& problem, const OptimizerConfig& config,
                        Budget& budget, RngStream& rng) {
    config.validate(problem.dimension);
    const std::size_t ps =
        static_cast<std::size_t>(config.resolve_population_size(problem.dimension));
    RunTracker tracker(static_cast<std::int64_t>(ps));

    Population pop = init_population(problem, ps, budget, rng);
    for (const auto& ind : pop) tracker.observe(ind.genome, ind.fitness);

    while (!budget.exhausted()) {
        Population next;
        next.reserve(ps);
        next.push_back(pop[best_index(pop)]);  // elite, fitness cached

        bool out_of_budget = false;
        while (next.size() < ps) {
            const Individual& pa = pop[detail::tournament_pick(pop, rng)];
            const Individual& pb = pop[detail::tournament_pick(pop, rng)];
            Genome child = pa.genome;
            if (rng.uniform() < config.ga_crossover_rate)
                for (int d = 0; d < problem.dimension; ++d)
                    if (rng.uniform() < 0.5) child[d] = pb.genome[d];
            for (int d = 0; d < problem.dimension; ++d)
                if (rng.uniform() < config.ga_mutation_rate) {
                    double sigma = 0.05 * (problem.upper[d] - problem.lower[d]);
                    child[d] += rng.gaussian() * sigma;
                }
            child = clamp_to_bounds(std::move(child), problem);
            auto f = evaluate(problem, child, budget);
            if (!f) {
                out_of_budget = true;
                break;
            }
            tracker.observe(child, *f);
            next.push_back({std::move(child), *f});
        }
        if (out_of_budget) break;  // partial generation is discarded
        pop = std::move(next);
    }
    return tracker.finish(rng.seed());
}

}  // namespace convpoint
