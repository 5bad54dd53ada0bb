#pragma once

#include <array>

#include "convpoint/optimizers/config.hpp"
#include "convpoint/population.hpp"

namespace convpoint {

namespace detail {

// Draws `count` indices, all distinct from each other and from `target`.
template <std::size_t N>
std::array<std::size_t, N> distinct_indices(std::size_t pop_size, std::size_t target,
                                            RngStream& rng) {
    std::array<std::size_t, N> out{};
    for (std::size_t k = 0; k < N; ++k) {
        for (;;) {
            std::size_t idx = rng.uniform_index(pop_size);
            bool clash = idx == target;
            for (std::size_t j = 0; j < k && !clash; ++j) clash = out[j] == idx;
            if (!clash) {
                out[k] = idx;
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

/// rand/1: v = p1 + F (p2 - p3)
inline Genome de_donor_rand1(const Genome& p1, const Genome& p2, const Genome& p3,
                             double scale_factor) {
    Genome v(p1.size());
    for (std::size_t d = 0; d < v.size(); ++d)
        v[d] = p1[d] + scale_factor * (p2[d] - p3[d]);
    return v;
}

/// best/1: v = best + F (p1 - p2)
inline Genome de_donor_best1(const Genome& best, const Genome& p1, const Genome& p2,
                             double scale_factor) {
    Genome v(best.size());
    for (std::size_t d = 0; d < v.size(); ++d)
        v[d] = best[d] + scale_factor * (p1[d] - p2[d]);
    return v;
}

/// current-to-best/1: v = x + F (best - x) + F (p1 - p2), one shared F
inline Genome de_donor_current_to_best1(const Genome& current, const Genome& best,
                                        const Genome& p1, const Genome& p2,
                                        double scale_factor) {
    Genome v(current.size());
    for (std::size_t d = 0; d < v.size(); ++d)
        v[d] = current[d] + scale_factor * (best[d] - current[d]) +
               scale_factor * (p1[d] - p2[d]);
    return v;
}

/// Donor vectors for every target, from a snapshot of the current
/// population. Index draws are distinct from each other and from the
/// target.
inline std::vector<Genome> de_mutation(const Population& pop, DeStrategy strategy,
                                       double scale_factor, RngStream& rng) {
    const std::size_t ps = pop.size();
    const std::size_t min_size = strategy == DeStrategy::rand_1 ? 4 : 3;
    if (ps < min_size)
        throw std::invalid_argument("de_mutation: population too small for distinct indices");
    const std::size_t best = best_index(pop);

    std::vector<Genome> donors(ps);
    for (std::size_t i = 0; i < ps; ++i) {
        switch (strategy) {
            case DeStrategy::rand_1: {
                auto [p1, p2, p3] = detail::distinct_indices<3>(ps, i, rng);
                donors[i] = de_donor_rand1(pop[p1].genome, pop[p2].genome, pop[p3].genome,
                                           scale_factor);
                break;
            }
            case DeStrategy::best_1: {
                auto [p1, p2] = detail::distinct_indices<2>(ps, i, rng);
                donors[i] =
                    de_donor_best1(pop[best].genome, pop[p1].genome, pop[p2].genome,
                                   scale_factor);
                break;
            }
            case DeStrategy::current_to_best_1: {
                auto [p1, p2] = detail::distinct_indices<2>(ps, i, rng);
                donors[i] = de_donor_current_to_best1(pop[i].genome, pop[best].genome,
                                                      pop[p1].genome, pop[p2].genome,
                                                      scale_factor);
                break;
            }
        }
    }
    return donors;
}

/// Binomial crossover with one forced donor gene, so the trial differs from
/// the target unless donor == target.
inline Genome de_crossover(const Genome& target, const Genome& donor,
                           double crossover_rate, RngStream& rng) {
    Genome trial = target;
    const std::size_t forced = rng.uniform_index(target.size());
    for (std::size_t d = 0; d < target.size(); ++d)
        if (d == forced || rng.uniform() < crossover_rate) trial[d] = donor[d];
    return trial;
}

/// One-to-one greedy survival; ties prefer the trial.
inline const Individual& de_selection(const Individual& target, const Individual& trial) {
    return trial.fitness <= target.fitness ? trial : target;
}

/// One synchronous DE generation in place: donors from the generation-start
/// snapshot, then trial evaluation and per-slot selection in index order.
/// Returns false when the budget died mid-generation (the evaluated prefix
/// has already been selected).
inline bool de_generation(const Problem& problem, Population& pop,
                          const OptimizerConfig& config, Budget& budget,
                          RngStream& rng, RunTracker& tracker) {
    std::vector<Genome> donors =
        de_mutation(pop, config.de_strategy, config.de_scale_factor, rng);
    std::vector<Genome> trials(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i)
        trials[i] = clamp_to_bounds(
            de_crossover(pop[i].genome, donors[i], config.de_crossover_rate, rng), problem);

    for (std::size_t i = 0; i < pop.size(); ++i) {
        auto f = evaluate(problem, trials[i], budget);
        if (!f) return false;
        tracker.observe(trials[i], *f);
        Individual trial{std::move(trials[i]), *f};
        pop[i] = de_selection(pop[i], trial);
    }
    return true;
}

/// Plain differential evolution under a fixed evaluation budget.
inline RunRecord run_de(const Problem& problem, const OptimizerConfig& config,
                        Budget& budget, RngStream& rng) {
    config.validate(problem.dimension);
    const std::size_t ps =
        static_cast<std::size_t>(config.resolve_population_size(problem.dimension));
    RunTracker tracker(static_cast<std::int64_t>(ps));

    Population pop = init_population(problem, ps, budget, rng);
    for (const auto& ind : pop) tracker.observe(ind.genome, ind.fitness);

    while (!budget.exhausted())
        if (!de_generation(problem, pop, config, budget, rng, tracker)) break;
    return tracker.finish(rng.seed());
}

}  // namespace convpoint
