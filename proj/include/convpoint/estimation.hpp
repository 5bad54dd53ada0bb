#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "convpoint/population.hpp"
#include "convpoint/problem.hpp"

namespace convpoint {

enum class EstimationMethod { averaging, weighted_averaging, analytical };

/// A genome-space estimate of where the population is converging to.
struct EstimatedPoint {
    Genome coordinates;
    EstimationMethod method = EstimationMethod::averaging;
    int inputs_used = 0;  // elite members (AS/WAS) or moving vectors (analytical)
};

/// Elite count for a rate: max(1, round(rate x PS)), capped at PS.
inline std::size_t elite_count(std::size_t population_size, double rate) {
    if (rate <= 0.0 || rate > 1.0)
        throw std::invalid_argument("elite rate must be in (0, 1]");
    auto s = static_cast<std::size_t>(std::llround(rate * static_cast<double>(population_size)));
    return std::clamp<std::size_t>(s, 1, population_size);
}

/// The s best members, ordered by fitness then original index.
inline Population select_elite(const Population& pop, double rate) {
    if (pop.empty()) throw std::invalid_argument("select_elite: empty population");
    const std::size_t s = elite_count(pop.size(), rate);
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&pop](std::size_t a, std::size_t b) {
        return pop[a].fitness < pop[b].fitness;
    });
    Population elite;
    elite.reserve(s);
    for (std::size_t i = 0; i < s; ++i) elite.push_back(pop[order[i]]);
    return elite;
}

/// Averaging strategy: the per-dimension mean of the elite genomes.
inline EstimatedPoint average_strategy(const Population& pop, double rate) {
    Population elite = select_elite(pop, rate);
    const std::size_t dim = elite[0].genome.size();
    EstimatedPoint point;
    point.method = EstimationMethod::averaging;
    point.inputs_used = static_cast<int>(elite.size());
    point.coordinates.assign(dim, 0.0);
    for (const auto& ind : elite)
        for (std::size_t d = 0; d < dim; ++d) point.coordinates[d] += ind.genome[d];
    for (double& c : point.coordinates) c /= static_cast<double>(elite.size());
    return point;
}

enum class WeightMode {
    /// Better (lower-fitness) elites weigh more; weights are non-negative
    /// and sum to one regardless of the sign of the fitness values.
    consistent,
    /// w_i = f_i / sum(f): the raw normalized-fitness rule. Under
    /// minimization this weighs *worse* elites more and requires strictly
    /// positive fitness values; kept selectable for fidelity.
    literal,
};

/// Weighted averaging strategy over the elite sub-population.
inline EstimatedPoint weighted_average_strategy(const Population& pop, double rate,
                                                WeightMode mode = WeightMode::consistent) {
    Population elite = select_elite(pop, rate);
    const std::size_t s = elite.size();
    const std::size_t dim = elite[0].genome.size();

    std::vector<double> weights(s);
    if (mode == WeightMode::literal) {
        double total = 0.0;
        for (const auto& ind : elite) {
            if (!(ind.fitness > 0.0))
                throw std::invalid_argument(
                    "weighted_average_strategy: literal mode needs strictly positive "
                    "fitness values (use WeightMode::consistent for signed fitness)");
            total += ind.fitness;
        }
        for (std::size_t j = 0; j < s; ++j) weights[j] = elite[j].fitness / total;
    } else {
        // elite is sorted by fitness, so the worst elite is at the back
        const double worst = elite.back().fitness;
        const double eps = 1e-12 * (1.0 + std::abs(worst));
        double total = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            weights[j] = worst - elite[j].fitness + eps;
            total += weights[j];
        }
        for (double& w : weights) w /= total;
    }

    EstimatedPoint point;
    point.method = EstimationMethod::weighted_averaging;
    point.inputs_used = static_cast<int>(s);
    point.coordinates.assign(dim, 0.0);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t d = 0; d < dim; ++d)
            point.coordinates[d] += weights[j] * elite[j].genome[d];
    return point;
}

/// Displacement from a worse parent to a better offspring. The line
/// p + t d is assumed to pass near the optimum.
struct MovingVector {
    Genome parent;
    Genome offspring;

    Genome direction() const {
        Genome d(parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) d[i] = offspring[i] - parent[i];
        return d;
    }
};

/// Nearest point to all movement lines in the least-squares sense:
/// solves sum_i (I - d0_i d0_i^T) X = sum_i (I - d0_i d0_i^T) p_i.
/// Zero-length vectors are dropped. Returns nullopt when the accumulated
/// matrix is singular or has condition number above 1e12 (degenerate
/// directions); callers fall back to average_strategy.
inline std::optional<EstimatedPoint> analytical_estimate(
    std::span<const MovingVector> vectors) {
    if (vectors.empty()) return std::nullopt;
    const int dim = static_cast<int>(vectors.front().parent.size());

    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    int used = 0;
    for (const auto& mv : vectors) {
        Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(mv.parent.data(), dim);
        Eigen::VectorXd o = Eigen::Map<const Eigen::VectorXd>(mv.offspring.data(), dim);
        Eigen::VectorXd d = o - p;
        const double norm = d.norm();
        if (norm == 0.0) continue;  // undefined direction
        d /= norm;
        Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(dim, dim) - d * d.transpose();
        lhs += proj;
        rhs += proj * p;
        ++used;
    }
    if (used < 2) return std::nullopt;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(dim - 1);
    if (!(smin > 0.0) || !std::isfinite(smax) || smax / smin > 1e12) return std::nullopt;

    Eigen::VectorXd x = svd.solve(rhs);
    EstimatedPoint point;
    point.method = EstimationMethod::analytical;
    point.inputs_used = used;
    point.coordinates.assign(x.data(), x.data() + dim);
    return point;
}

/// k genomes drawn from an isotropic Gaussian centered at the estimated
/// point, clamped to the bounds.
inline std::vector<Genome> gaussian_sample(const EstimatedPoint& center, double sigma,
                                           int count, const Problem& problem,
                                           RngStream& rng) {
    if (count < 1) throw std::invalid_argument("gaussian_sample: count must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_sample: sigma must be > 0");
    std::vector<Genome> samples;
    samples.reserve(count);
    for (int i = 0; i < count; ++i) {
        Genome g(problem.dimension);
        for (int d = 0; d < problem.dimension; ++d)
            g[d] = center.coordinates[d] + rng.gaussian() * sigma;
        samples.push_back(clamp_to_bounds(std::move(g), problem));
    }
    return samples;
}

/// Injection pool rule: the candidate pool is {estimated point} + {k
/// Gaussian samples} + {the k worst members}; the best k of the pool take
/// over the k worst slots, everything else untouched. Ties prefer the
/// incumbent members. k = samples.size() and must stay below the
/// population size.
inline Population inject(Population pop, const Individual& center,
                         std::span<const Individual> samples) {
    const std::size_t k = samples.size();
    if (k == 0) return pop;
    if (k >= pop.size())
        throw std::invalid_argument("inject: sample count must be below population size");

    // the k worst slots; equal fitness resolves by original index
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&pop](std::size_t a, std::size_t b) {
        return pop[a].fitness > pop[b].fitness;
    });
    std::vector<std::size_t> slots(order.begin(), order.begin() + k);
    std::sort(slots.begin(), slots.end());

    struct Candidate {
        const Individual* ind;
        bool incumbent;
        std::size_t seq;  // entry order, for a total deterministic order
    };
    std::vector<Candidate> pool;
    pool.reserve(2 * k + 1);
    for (std::size_t s : slots) pool.push_back({&pop[s], true, pool.size()});
    pool.push_back({&center, false, pool.size()});
    for (const auto& ind : samples) pool.push_back({&ind, false, pool.size()});

    std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        if (a.ind->fitness != b.ind->fitness) return a.ind->fitness < b.ind->fitness;
        if (a.incumbent != b.incumbent) return a.incumbent;
        return a.seq < b.seq;
    });

    std::vector<Individual> winners;
    winners.reserve(k);
    for (std::size_t i = 0; i < k; ++i) winners.push_back(*pool[i].ind);
    for (std::size_t i = 0; i < k; ++i) pop[slots[i]] = std::move(winners[i]);
    return pop;
}

}  // namespace convpoint
