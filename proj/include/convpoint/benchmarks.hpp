#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "convpoint/problem.hpp"
#include "convpoint/rng.hpp"

namespace convpoint::bench {

// ---------------------------------------------------------------------------
// Base functions
//
// Classic definitions with minimum value 0. All have their minimum at the
// origin except Rosenbrock (all-ones); Schwefel and the expanded
// Griewank-Rosenbrock carry their usual internal shifts so that they also
// vanish at the origin. Values are >= 0 everywhere (up to ~1e-13 for
// Schwefel's tabulated offset).
// ---------------------------------------------------------------------------

enum class BaseFunction {
    sphere,
    elliptic,
    bent_cigar,
    discus,
    different_powers,
    rosenbrock,
    schaffers_f7,
    ackley,
    weierstrass,
    griewank,
    rastrigin,
    rastrigin_noncont,
    schwefel,
    katsuura,
    lunacek_bi_rastrigin,
    expanded_griewank_rosenbrock,
    expanded_schaffers_f6,
};

inline const char* base_name(BaseFunction base) {
    switch (base) {
        case BaseFunction::sphere: return "sphere";
        case BaseFunction::elliptic: return "elliptic";
        case BaseFunction::bent_cigar: return "bent_cigar";
        case BaseFunction::discus: return "discus";
        case BaseFunction::different_powers: return "different_powers";
        case BaseFunction::rosenbrock: return "rosenbrock";
        case BaseFunction::schaffers_f7: return "schaffers_f7";
        case BaseFunction::ackley: return "ackley";
        case BaseFunction::weierstrass: return "weierstrass";
        case BaseFunction::griewank: return "griewank";
        case BaseFunction::rastrigin: return "rastrigin";
        case BaseFunction::rastrigin_noncont: return "rastrigin_noncont";
        case BaseFunction::schwefel: return "schwefel";
        case BaseFunction::katsuura: return "katsuura";
        case BaseFunction::lunacek_bi_rastrigin: return "lunacek_bi_rastrigin";
        case BaseFunction::expanded_griewank_rosenbrock: return "expanded_griewank_rosenbrock";
        case BaseFunction::expanded_schaffers_f6: return "expanded_schaffers_f6";
    }
    throw std::invalid_argument("base_name: unknown base function");
}

inline BaseFunction base_from_name(const std::string& name) {
    static const std::vector<BaseFunction> all = {
        BaseFunction::sphere, BaseFunction::elliptic, BaseFunction::bent_cigar,
        BaseFunction::discus, BaseFunction::different_powers, BaseFunction::rosenbrock,
        BaseFunction::schaffers_f7, BaseFunction::ackley, BaseFunction::weierstrass,
        BaseFunction::griewank, BaseFunction::rastrigin, BaseFunction::rastrigin_noncont,
        BaseFunction::schwefel, BaseFunction::katsuura, BaseFunction::lunacek_bi_rastrigin,
        BaseFunction::expanded_griewank_rosenbrock, BaseFunction::expanded_schaffers_f6};
    for (BaseFunction b : all)
        if (name == base_name(b)) return b;
    throw std::invalid_argument("unknown base function: " + name);
}

namespace detail {

constexpr double kPi = 3.141592653589793238462643383279502884;

inline double sphere(const Genome& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

inline double elliptic(const Genome& x) {
    const int n = static_cast<int>(x.size());
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = n > 1 ? std::pow(1e6, static_cast<double>(i) / (n - 1)) : 1.0;
        s += w * x[i] * x[i];
    }
    return s;
}

inline double bent_cigar(const Genome& x) {
    double s = x[0] * x[0];
    for (std::size_t i = 1; i < x.size(); ++i) s += 1e6 * x[i] * x[i];
    return s;
}

inline double discus(const Genome& x) {
    double s = 1e6 * x[0] * x[0];
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
    return s;
}

inline double different_powers(const Genome& x) {
    const int n = static_cast<int>(x.size());
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double p = n > 1 ? 2.0 + 4.0 * i / (n - 1) : 2.0;
        s += std::pow(std::abs(x[i]), p);
    }
    return std::sqrt(s);
}

inline double rosenbrock(const Genome& x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double a = x[i] * x[i] - x[i + 1];
        double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

inline double schaffers_f7(const Genome& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) return 0.0;
    double s = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        double si = std::sqrt(x[i] * x[i] + x[i + 1] * x[i + 1]);
        double root = std::sqrt(si);
        double t = std::sin(50.0 * std::pow(si, 0.2));
        s += root + root * t * t;
    }
    s /= n - 1;
    return s * s;
}

inline double ackley(const Genome& x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * kPi * v);
    }
    // grouped so both terms cancel to exactly 0 at the optimum
    return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sq / n))) +
           (std::exp(1.0) - std::exp(cs / n));
}

inline double weierstrass(const Genome& x) {
    constexpr int k_max = 20;
    constexpr double a = 0.5, b = 3.0;
    double at_zero = 0.0;  // per-dimension value at the optimum, same summation
    {
        double ak = 1.0, bk = 1.0;
        for (int k = 0; k <= k_max; ++k) {
            at_zero += ak * std::cos(2.0 * kPi * bk * 0.5);
            ak *= a;
            bk *= b;
        }
    }
    double s = 0.0;
    for (double v : x) {
        double ak = 1.0, bk = 1.0;
        for (int k = 0; k <= k_max; ++k) {
            s += ak * std::cos(2.0 * kPi * bk * (v + 0.5));
            ak *= a;
            bk *= b;
        }
    }
    return s - static_cast<double>(x.size()) * at_zero;
}

inline double griewank(const Genome& x) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i] / 4000.0;
        p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s - p + 1.0;
}

inline double rastrigin(const Genome& x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
    return s;
}

inline double rastrigin_noncont(const Genome& x) {
    Genome y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = std::abs(x[i]) > 0.5 ? std::round(2.0 * x[i]) / 2.0 : x[i];
    return rastrigin(y);
}

// Modified Schwefel with the usual 10x input scaling. The additive offset
// is the same expression as the per-term value at the optimum, so the
// function is exactly zero at the origin instead of off by the rounding of
// the tabulated 418.98... constant.
inline double schwefel(const Genome& x) {
    const double n = static_cast<double>(x.size());
    auto g = [n](double w) {
        if (std::abs(w) <= 500.0) return w * std::sin(std::sqrt(std::abs(w)));
        if (w > 500.0) {
            double m = 500.0 - std::fmod(w, 500.0);
            double t = (w - 500.0) / 100.0;
            return m * std::sin(std::sqrt(std::abs(m))) - t * t / n;
        }
        double m = std::fmod(std::abs(w), 500.0) - 500.0;
        double t = (w + 500.0) / 100.0;
        return m * std::sin(std::sqrt(std::abs(m))) - t * t / n;
    };
    constexpr double w_opt = 4.209687462275036e2;
    const double g_opt = g(w_opt);
    double s = 0.0;
    for (double v : x) s += g_opt - g(10.0 * v + w_opt);
    return s;
}

inline double katsuura(const Genome& x) {
    const double n = static_cast<double>(x.size());
    const double exponent = 10.0 / std::pow(n, 1.2);
    const double scale = 10.0 / (n * n);
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double inner = 0.0;
        double two_j = 2.0;
        for (int j = 1; j <= 32; ++j) {
            double t = two_j * x[i];
            inner += std::abs(t - std::round(t)) / two_j;
            two_j *= 2.0;
        }
        prod *= std::pow(1.0 + (i + 1) * inner, exponent);
    }
    return scale * prod - scale;
}

// Expressed in deviations from the first basin's center so the minimum sits
// at the origin. s goes negative below D=2 where the function would be
// unbounded, hence the floor.
inline double lunacek_bi_rastrigin(const Genome& x) {
    const double n = static_cast<double>(x.size());
    constexpr double mu0 = 2.5, d = 1.0;
    double s_coef = 1.0 - 1.0 / (2.0 * std::sqrt(n + 20.0) - 8.2);
    if (s_coef <= 0.0) s_coef = 1.0;
    const double mu1 = -std::sqrt((mu0 * mu0 - d) / s_coef);
    double sum0 = 0.0, sum1 = 0.0, cs = 0.0;
    for (double t : x) {
        sum0 += t * t;
        double u = t + mu0 - mu1;
        sum1 += u * u;
        cs += std::cos(2.0 * kPi * t);
    }
    return std::min(sum0, d * n + s_coef * sum1) + 10.0 * (n - cs);
}

inline double grie_rosen_pair(double a, double b) {
    double q = a * a - b;
    double r = a - 1.0;
    double t = 100.0 * q * q + r * r;
    return t * t / 4000.0 - std::cos(t) + 1.0;
}

// Wrap-around composition; the usual +1 is folded in so the minimum is at
// the origin rather than at all-ones.
inline double expanded_griewank_rosenbrock(const Genome& x) {
    const std::size_t n = x.size();
    if (n == 1) return grie_rosen_pair(x[0] + 1.0, x[0] + 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += grie_rosen_pair(x[i] + 1.0, x[(i + 1) % n] + 1.0);
    return s;
}

inline double schaffers_f6_pair(double a, double b) {
    double r2 = a * a + b * b;
    double t = std::sin(std::sqrt(r2));
    double den = 1.0 + 0.001 * r2;
    return 0.5 + (t * t - 0.5) / (den * den);
}

inline double expanded_schaffers_f6(const Genome& x) {
    const std::size_t n = x.size();
    if (n == 1) return schaffers_f6_pair(x[0], x[0]);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += schaffers_f6_pair(x[i], x[(i + 1) % n]);
    return s;
}

}  // namespace detail

inline double eval_base(BaseFunction base, const Genome& x) {
    if (x.empty()) throw std::invalid_argument("eval_base: empty genome");
    switch (base) {
        case BaseFunction::sphere: return detail::sphere(x);
        case BaseFunction::elliptic: return detail::elliptic(x);
        case BaseFunction::bent_cigar: return detail::bent_cigar(x);
        case BaseFunction::discus: return detail::discus(x);
        case BaseFunction::different_powers: return detail::different_powers(x);
        case BaseFunction::rosenbrock: return detail::rosenbrock(x);
        case BaseFunction::schaffers_f7: return detail::schaffers_f7(x);
        case BaseFunction::ackley: return detail::ackley(x);
        case BaseFunction::weierstrass: return detail::weierstrass(x);
        case BaseFunction::griewank: return detail::griewank(x);
        case BaseFunction::rastrigin: return detail::rastrigin(x);
        case BaseFunction::rastrigin_noncont: return detail::rastrigin_noncont(x);
        case BaseFunction::schwefel: return detail::schwefel(x);
        case BaseFunction::katsuura: return detail::katsuura(x);
        case BaseFunction::lunacek_bi_rastrigin: return detail::lunacek_bi_rastrigin(x);
        case BaseFunction::expanded_griewank_rosenbrock:
            return detail::expanded_griewank_rosenbrock(x);
        case BaseFunction::expanded_schaffers_f6:
            return detail::expanded_schaffers_f6(x);
    }
    throw std::invalid_argument("eval_base: unknown base function");
}

// ---------------------------------------------------------------------------
// Rotation matrices
// ---------------------------------------------------------------------------

struct RotationMatrix {
    int dimension = 0;
    std::vector<double> entries;  // row-major, dimension x dimension

    double at(int r, int c) const { return entries[static_cast<std::size_t>(r) * dimension + c]; }

    void apply(const double* in, double* out) const {
        for (int r = 0; r < dimension; ++r) {
            double s = 0.0;
            const double* row = entries.data() + static_cast<std::size_t>(r) * dimension;
            for (int c = 0; c < dimension; ++c) s += row[c] * in[c];
            out[r] = s;
        }
    }
};

/// Random orthogonal matrix: QR of a standard Gaussian matrix with the sign
/// of R's diagonal folded into Q, which makes the result unique for a given
/// Gaussian draw. Deterministic per seed.
inline RotationMatrix random_rotation(int dimension, RngStream& rng) {
    if (dimension < 1) throw std::invalid_argument("random_rotation: dimension must be >= 1");
    Eigen::MatrixXd g(dimension, dimension);
    for (int r = 0; r < dimension; ++r)
        for (int c = 0; c < dimension; ++c) g(r, c) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    for (int c = 0; c < dimension; ++c)            // R's diagonal lives in matrixQR()
        if (qr.matrixQR()(c, c) < 0.0) q.col(c) *= -1.0;

    RotationMatrix rot;
    rot.dimension = dimension;
    rot.entries.resize(static_cast<std::size_t>(dimension) * dimension);
    for (int rr = 0; rr < dimension; ++rr)
        for (int cc = 0; cc < dimension; ++cc)
            rot.entries[static_cast<std::size_t>(rr) * dimension + cc] = q(rr, cc);
    return rot;
}

// ---------------------------------------------------------------------------
// Decorated problems and the suite
// ---------------------------------------------------------------------------

/// One suite entry: f(x) = base(R (x - shift)) + bias on [-100, 100]^D.
struct BenchmarkSpec {
    std::string name;
    BaseFunction base = BaseFunction::sphere;
    double bias = 0.0;
    int dimension = 0;
    std::vector<double> shift;          // empty = no shift
    std::shared_ptr<RotationMatrix> rotation;  // null = identity
    std::uint64_t seed = 0;             // seed the decoration was drawn from

    void validate() const {
        if (dimension < 1) throw std::invalid_argument("BenchmarkSpec: dimension must be >= 1");
        if (!shift.empty() && static_cast<int>(shift.size()) != dimension)
            throw std::invalid_argument("BenchmarkSpec: shift dimension mismatch");
        if (rotation && rotation->dimension != dimension)
            throw std::invalid_argument("BenchmarkSpec: rotation dimension mismatch");
    }
};

inline Problem make_problem(const BenchmarkSpec& spec) {
    spec.validate();
    Problem p;
    p.name = spec.name;
    p.dimension = spec.dimension;
    p.lower.assign(spec.dimension, -100.0);
    p.upper.assign(spec.dimension, 100.0);
    p.bias = spec.bias;
    const BaseFunction base = spec.base;
    const std::vector<double> shift = spec.shift;
    const std::shared_ptr<RotationMatrix> rot = spec.rotation;
    p.objective = [base, shift, rot](const Genome& x) {
        Genome z(x.size());
        if (shift.empty())
            z = x;
        else
            for (std::size_t d = 0; d < x.size(); ++d) z[d] = x[d] - shift[d];
        if (rot) {
            Genome w(z.size());
            rot->apply(z.data(), w.data());
            z.swap(w);
        }
        return eval_base(base, z);
    };
    return p;
}

namespace detail {

struct SuiteRow {
    const char* name;
    BaseFunction base;
    double bias;
    bool rotated;
};

// The 20 non-composition rows, in table order. "Rotated" follows the row
// labels; shifts are always applied.
inline const std::vector<SuiteRow>& suite_rows() {
    static const std::vector<SuiteRow> rows = {
        {"f01_sphere", BaseFunction::sphere, -1400.0, false},
        {"f02_rotated_elliptic", BaseFunction::elliptic, -1300.0, true},
        {"f03_rotated_bent_cigar", BaseFunction::bent_cigar, -1200.0, true},
        {"f04_rotated_discus", BaseFunction::discus, -1100.0, true},
        {"f05_different_powers", BaseFunction::different_powers, -1000.0, false},
        {"f06_rotated_rosenbrock", BaseFunction::rosenbrock, -900.0, true},
        {"f07_rotated_schaffers_f7", BaseFunction::schaffers_f7, -800.0, true},
        {"f08_rotated_ackley", BaseFunction::ackley, -700.0, true},
        {"f09_rotated_weierstrass", BaseFunction::weierstrass, -600.0, true},
        {"f10_rotated_griewank", BaseFunction::griewank, -500.0, true},
        {"f11_rastrigin", BaseFunction::rastrigin, -400.0, false},
        {"f12_rotated_rastrigin", BaseFunction::rastrigin, -300.0, true},
        {"f13_noncont_rotated_rastrigin", BaseFunction::rastrigin_noncont, -200.0, true},
        {"f14_schwefel", BaseFunction::schwefel, -100.0, false},
        {"f15_rotated_schwefel", BaseFunction::schwefel, 100.0, true},
        {"f16_rotated_katsuura", BaseFunction::katsuura, 200.0, true},
        {"f17_lunacek_bi_rastrigin", BaseFunction::lunacek_bi_rastrigin, 300.0, false},
        {"f18_rotated_lunacek_bi_rastrigin", BaseFunction::lunacek_bi_rastrigin, 400.0, true},
        {"f19_expanded_griewank_rosenbrock", BaseFunction::expanded_griewank_rosenbrock, 500.0, false},
        {"f20_expanded_schaffers_f6", BaseFunction::expanded_schaffers_f6, 600.0, false},
    };
    return rows;
}

constexpr std::uint64_t kSuiteTag = 0x5347u;  // domain separation for suite streams

}  // namespace detail

inline int suite_size() { return static_cast<int>(detail::suite_rows().size()); }

inline const char* suite_function_name(int index) {
    const auto& rows = detail::suite_rows();
    if (index < 0 || index >= static_cast<int>(rows.size()))
        throw std::invalid_argument("suite_function_name: index out of range");
    return rows[static_cast<std::size_t>(index)].name;
}

/// Specs for the full suite at one dimension. Shifts are uniform in
/// [-80, 80]^D (optima stay interior); rotations only where the row says
/// so. Fully determined by (dimension, master_seed).
inline std::vector<BenchmarkSpec> suite_specs(int dimension, std::uint64_t master_seed) {
    if (dimension < 1) throw std::invalid_argument("suite_specs: dimension must be >= 1");
    const auto& rows = detail::suite_rows();
    std::vector<BenchmarkSpec> specs;
    specs.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        BenchmarkSpec spec;
        spec.name = rows[i].name;
        spec.base = rows[i].base;
        spec.bias = rows[i].bias;
        spec.dimension = dimension;
        spec.seed = derive_seed(master_seed, {detail::kSuiteTag, i,
                                              static_cast<std::uint64_t>(dimension)});
        RngStream rng(spec.seed);
        spec.shift.resize(dimension);
        for (int d = 0; d < dimension; ++d) spec.shift[d] = rng.uniform(-80.0, 80.0);
        if (rows[i].rotated)
            spec.rotation = std::make_shared<RotationMatrix>(random_rotation(dimension, rng));
        specs.push_back(std::move(spec));
    }
    return specs;
}

inline std::vector<Problem> suite(int dimension, std::uint64_t master_seed) {
    std::vector<Problem> problems;
    for (const auto& spec : suite_specs(dimension, master_seed))
        problems.push_back(make_problem(spec));
    return problems;
}

}  // namespace convpoint::bench
