#pragma once

#include <span>

#include "convpoint/optimizers/config.hpp"
#include "convpoint/population.hpp"

namespace convpoint {

/// Velocity clamp: 0.2 x range per dimension.
inline double pso_velocity_max(double lower, double upper) {
    return 0.2 * (upper - lower);
}

/// One particle update with the random factors passed in explicitly:
///   v' = w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), clamped to +-v_max
///   x' = x + v', clamped to bounds
inline void pso_update(Genome& position, Genome& velocity, const Genome& pbest,
                       const Genome& gbest, double inertia, double c1, double c2,
                       std::span<const double> r1, std::span<const double> r2,
                       const Problem& problem) {
    for (int d = 0; d < problem.dimension; ++d) {
        double v = inertia * velocity[d] + c1 * r1[d] * (pbest[d] - position[d]) +
                   c2 * r2[d] * (gbest[d] - position[d]);
        double vmax = pso_velocity_max(problem.lower[d], problem.upper[d]);
        velocity[d] = std::clamp(v, -vmax, vmax);
        position[d] = std::clamp(position[d] + velocity[d], problem.lower[d],
                                 problem.upper[d]);
    }
}

/// Same update with r1, r2 drawn per dimension from the stream.
inline void pso_update(Genome& position, Genome& velocity, const Genome& pbest,
                       const Genome& gbest, double inertia, double c1, double c2,
                       RngStream& rng, const Problem& problem) {
    std::vector<double> r1(problem.dimension), r2(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d) {
        r1[d] = rng.uniform();
        r2[d] = rng.uniform();
    }
    pso_update(position, velocity, pbest, gbest, inertia, c1, c2, r1, r2, problem);
}

/// Global-best PSO, synchronous: every particle moves against the same
/// gbest snapshot, then personal and global bests are refreshed once all
/// new positions are evaluated. Velocities start at zero. Minimization:
/// pbest/gbest improve on strictly lower fitness.
inline RunRecord run_pso(const Problem& problem, const OptimizerConfig& config,
                         Budget& budget, RngStream& rng) {
    config.validate(problem.dimension);
    const std::size_t ps =
        static_cast<std::size_t>(config.resolve_population_size(problem.dimension));
    RunTracker tracker(static_cast<std::int64_t>(ps));

    Population particles = init_population(problem, ps, budget, rng);
    for (const auto& p : particles) tracker.observe(p.genome, p.fitness);
    std::vector<Genome> velocity(ps, Genome(problem.dimension, 0.0));
    Population pbest = particles;
    Individual gbest = pbest[best_index(pbest)];

    while (!budget.exhausted()) {
        for (std::size_t i = 0; i < ps; ++i)
            pso_update(particles[i].genome, velocity[i], pbest[i].genome, gbest.genome,
                       config.pso_inertia, config.pso_c1, config.pso_c2, rng, problem);
        bool out_of_budget = false;
        for (std::size_t i = 0; i < ps; ++i) {
            auto f = evaluate(problem, particles[i].genome, budget);
            if (!f) {
                out_of_budget = true;
                break;
            }
            particles[i].fitness = *f;
            tracker.observe(particles[i].genome, *f);
            if (*f < pbest[i].fitness) pbest[i] = particles[i];
        }
        for (const auto& pb : pbest)
            if (pb.fitness < gbest.fitness) gbest = pb;
        if (out_of_budget) break;
    }
    return tracker.finish(rng.seed());
}

}  // namespace convpoint
