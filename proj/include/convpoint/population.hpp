#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "convpoint/problem.hpp"
#include "convpoint/rng.hpp"

namespace convpoint {

/// Genome plus cached fitness. NaN marks "not evaluated yet".
struct Individual {
    Genome genome;
    double fitness = std::numeric_limits<double>::quiet_NaN();

    bool evaluated() const { return !std::isnan(fitness); }
};

using Population = std::vector<Individual>;

/// Index of the member with minimal fitness; ties go to the lowest index.
inline std::size_t best_index(const Population& pop) {
    if (pop.empty()) throw std::invalid_argument("best_index: empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness < pop[best].fitness) best = i;
    return best;
}

inline const Individual& best_individual(const Population& pop) {
    return pop[best_index(pop)];
}

inline std::size_t worst_index(const Population& pop) {
    if (pop.empty()) throw std::invalid_argument("worst_index: empty population");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness > pop[worst].fitness) worst = i;
    return worst;
}

inline Genome random_genome(const Problem& problem, RngStream& rng) {
    Genome g(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d)
        g[d] = rng.uniform(problem.lower[d], problem.upper[d]);
    return g;
}

/// Draws `size` genomes uniformly within bounds and evaluates them all.
/// Throws BudgetExhausted if the budget dies before the population is
/// fully evaluated (the run is aborted; nothing useful exists yet).
inline Population init_population(const Problem& problem, std::size_t size,
                                  Budget& budget, RngStream& rng) {
    if (size < 1) throw std::invalid_argument("init_population: size must be >= 1");
    Population pop;
    pop.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        Individual ind;
        ind.genome = random_genome(problem, rng);
        auto f = evaluate(problem, ind.genome, budget);
        if (!f) throw BudgetExhausted("budget exhausted during population initialization");
        ind.fitness = *f;
        pop.push_back(std::move(ind));
    }
    return pop;
}

}  // namespace convpoint
