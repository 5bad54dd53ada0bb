#pragma once

#include "convpoint/optimizers/config.hpp"
#include "convpoint/population.hpp"

namespace convpoint {

/// Mutation step size: the configured strength is a fraction of the domain
/// width (strength 0.2 on [-100, 100] gives sigma 40).
inline double es_mutation_sigma(double strength, double lower, double upper) {
    return strength * (upper - lower);
}

/// (1+1)-ES: per-gene Gaussian mutation of a single parent, offspring
/// accepted when not worse.
inline RunRecord run_es(const Problem& problem, const OptimizerConfig& config,
                        Budget& budget, RngStream& rng) {
    config.validate(problem.dimension);
    RunTracker tracker(config.resolve_population_size(problem.dimension));

    Genome parent = random_genome(problem, rng);
    auto f0 = evaluate(problem, parent, budget);
    if (!f0) throw BudgetExhausted("run_es: no budget for the initial parent");
    double parent_fitness = *f0;
    tracker.observe(parent, parent_fitness);

    std::vector<double> sigma(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d)
        sigma[d] = es_mutation_sigma(config.es_mutation_strength, problem.lower[d],
                                     problem.upper[d]);

    while (!budget.exhausted()) {
        Genome child = parent;
        for (int d = 0; d < problem.dimension; ++d) child[d] += rng.gaussian() * sigma[d];
        child = clamp_to_bounds(std::move(child), problem);
        auto f = evaluate(problem, child, budget);
        if (!f) break;
        tracker.observe(child, *f);
        if (*f <= parent_fitness) {
            parent = std::move(child);
            parent_fitness = *f;
        }
    }
    return tracker.finish(rng.seed());
}

}  // namespace convpoint
