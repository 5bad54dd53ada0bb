#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace convpoint {

using Genome = std::vector<double>;

/// Thrown when a run cannot even finish its initial evaluations; the
/// experiment harness catches it per run and records a failed cell.
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation budget. Every objective call goes through Budget, which is
/// the fairness currency of all comparisons: used never exceeds
/// max_evaluations and each call costs exactly one.
class Budget {
public:
    explicit Budget(std::int64_t max_evaluations)
        : max_evaluations_(max_evaluations) {
        if (max_evaluations < 0) throw std::invalid_argument("Budget: max_evaluations must be >= 0");
    }

    std::int64_t max_evaluations() const { return max_evaluations_; }
    std::int64_t used() const { return used_; }
    std::int64_t remaining() const { return max_evaluations_ - used_; }
    bool exhausted() const { return used_ >= max_evaluations_; }

    /// Claims one evaluation; false when none are left.
    bool try_consume() {
        if (exhausted()) return false;
        ++used_;
        return true;
    }

private:
    std::int64_t max_evaluations_;
    std::int64_t used_ = 0;
};

/// A minimization problem over a box-bounded continuous domain. The raw
/// objective excludes the bias; evaluate() adds it, so a problem whose
/// objective vanishes at its optimum scores exactly the bias there.
struct Problem {
    std::string name;
    int dimension = 0;
    std::vector<double> lower;  // per-dimension bounds
    std::vector<double> upper;
    std::function<double(const Genome&)> objective;
    double bias = 0.0;

    void validate() const {
        if (dimension <= 0) throw std::invalid_argument("Problem: dimension must be positive");
        if (static_cast<int>(lower.size()) != dimension ||
            static_cast<int>(upper.size()) != dimension)
            throw std::invalid_argument("Problem: bound size mismatch");
        for (int d = 0; d < dimension; ++d)
            if (!(lower[d] < upper[d]))
                throw std::invalid_argument("Problem: lower bound must be < upper bound");
        if (!objective) throw std::invalid_argument("Problem: objective not set");
    }
};

/// Projects each component onto [lower, upper]; in-bounds components pass
/// through unchanged. The only repair rule used anywhere in this library.
inline Genome clamp_to_bounds(Genome genome, const Problem& problem) {
    for (int d = 0; d < problem.dimension; ++d)
        genome[d] = std::clamp(genome[d], problem.lower[d], problem.upper[d]);
    return genome;
}

inline bool within_bounds(const Genome& genome, const Problem& problem) {
    for (int d = 0; d < problem.dimension; ++d)
        if (genome[d] < problem.lower[d] || genome[d] > problem.upper[d]) return false;
    return true;
}

/// One objective call: returns objective(genome) + bias and charges the
/// budget. nullopt signals an exhausted budget; callers treat that as a
/// termination signal, not an error.
inline std::optional<double> evaluate(const Problem& problem, const Genome& genome,
                                      Budget& budget) {
    if (!budget.try_consume()) return std::nullopt;
    return problem.objective(genome) + problem.bias;
}

/// Test-mode wrapper: same problem, but the objective throws if it ever
/// sees an out-of-bounds genome. Used to assert the bounds-closure
/// invariant in tests.
inline Problem bounds_checked(Problem problem) {
    auto inner = problem.objective;
    auto lower = problem.lower;
    auto upper = problem.upper;
    problem.objective = [inner, lower, upper](const Genome& x) {
        for (std::size_t d = 0; d < lower.size(); ++d)
            if (x[d] < lower[d] || x[d] > upper[d])
                throw std::logic_error("bounds_checked: genome outside bounds");
        return inner(x);
    };
    return problem;
}

}  // namespace convpoint
