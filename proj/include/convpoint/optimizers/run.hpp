#pragma once

#include "convpoint/optimizers/differential_evolution.hpp"
#include "convpoint/optimizers/evolution_strategy.hpp"
#include "convpoint/optimizers/genetic.hpp"
#include "convpoint/optimizers/pso.hpp"
#include "convpoint/optimizers/random_search.hpp"

namespace convpoint {

inline RunRecord run_optimizer(const Problem& problem, const OptimizerConfig& config,
                               Budget& budget, RngStream& rng) {
    switch (config.algorithm) {
        case Algorithm::rs: return run_rs(problem, config, budget, rng);
        case Algorithm::ga: return run_ga(problem, config, budget, rng);
        case Algorithm::de: return run_de(problem, config, budget, rng);
        case Algorithm::es: return run_es(problem, config, budget, rng);
        case Algorithm::pso: return run_pso(problem, config, budget, rng);
    }
    throw std::invalid_argument("run_optimizer: unknown algorithm");
}

}  // namespace convpoint
