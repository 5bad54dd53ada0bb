#pragma once

#include "convpoint/optimizers/config.hpp"
#include "convpoint/population.hpp"

namespace convpoint {

/// Random search: keep an incumbent, sample a candidate each step, accept
/// on strict improvement. Default sampling is uniform over the whole box;
/// with rs_neighborhood the candidate is drawn around the incumbent
/// (Gaussian, sigma = 0.1 x range per dimension) instead.
inline RunRecord run_rs(const Problem& problem, const OptimizerConfig& config,
                        Budget& budget, RngStream& rng) {
    config.validate(problem.dimension);
    RunTracker tracker(config.resolve_population_size(problem.dimension));

    Genome incumbent = random_genome(problem, rng);
    auto f0 = evaluate(problem, incumbent, budget);
    if (!f0) throw BudgetExhausted("run_rs: no budget for the initial sample");
    double incumbent_fitness = *f0;
    tracker.observe(incumbent, incumbent_fitness);

    while (!budget.exhausted()) {
        Genome candidate(problem.dimension);
        if (config.rs_neighborhood) {
            for (int d = 0; d < problem.dimension; ++d) {
                double sigma = 0.1 * (problem.upper[d] - problem.lower[d]);
                candidate[d] = rng.gaussian(incumbent[d], sigma);
            }
            candidate = clamp_to_bounds(std::move(candidate), problem);
        } else {
            candidate = random_genome(problem, rng);
        }
        auto f = evaluate(problem, candidate, budget);
        if (!f) break;
        tracker.observe(candidate, *f);
        if (*f < incumbent_fitness) {
            incumbent = std::move(candidate);
            incumbent_fitness = *f;
        }
    }
    return tracker.finish(rng.seed());
}

}  // namespace convpoint
