#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace convpoint::stats {

/// Final fitness values of one algorithm over its trials.
struct SampleGroup {
    std::string label;
    std::vector<double> values;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::optional<double> adjusted_p;
};

/// Ranks 1..N; tied values share the average of their rank span.
inline std::vector<double> rank_with_ties(const std::vector<double>& values) {
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("rank_with_ties: non-finite value");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace detail {

// sum of t^3 - t over tie groups of the pooled sample
inline double tie_term(const std::vector<double>& pooled) {
    std::map<double, long long> counts;
    for (double v : pooled) ++counts[v];
    double t = 0.0;
    for (auto& [value, c] : counts)
        if (c > 1) t += static_cast<double>(c) * c * c - c;
    return t;
}

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace detail

/// Kruskal-Wallis omnibus test with tie correction; p from the chi-square
/// approximation with (groups - 1) degrees of freedom. A pool of identical
/// values yields H = 0, p = 1.
inline TestResult kruskal_wallis(const std::vector<SampleGroup>& groups) {
    if (groups.size() < 2)
        throw std::invalid_argument("kruskal_wallis: need at least 2 groups");
    std::vector<double> pooled;
    for (const auto& g : groups) {
        if (g.values.empty())
            throw std::invalid_argument("kruskal_wallis: empty group " + g.label);
        pooled.insert(pooled.end(), g.values.begin(), g.values.end());
    }
    const double n = static_cast<double>(pooled.size());
    const std::vector<double> ranks = rank_with_ties(pooled);

    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double r_sum = 0.0;
        for (std::size_t i = 0; i < g.values.size(); ++i) r_sum += ranks[offset + i];
        h += r_sum * r_sum / static_cast<double>(g.values.size());
        offset += g.values.size();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    const double correction = 1.0 - detail::tie_term(pooled) / (n * n * n - n);
    if (correction <= 0.0) return {0.0, 1.0, std::nullopt};  // all values identical
    h /= correction;

    boost::math::chi_squared dist(static_cast<double>(groups.size() - 1));
    double p = h > 0.0 ? boost::math::cdf(boost::math::complement(dist, h)) : 1.0;
    return {h, std::min(1.0, p), std::nullopt};
}

/// Mann-Whitney U. The statistic is U for group a (pairs where a's value
/// exceeds b's, ties half); two-sided p from the tie-corrected normal
/// approximation with continuity correction.
inline TestResult mann_whitney_u(const SampleGroup& a, const SampleGroup& b) {
    if (a.values.empty() || b.values.empty())
        throw std::invalid_argument("mann_whitney_u: empty group");
    const double n1 = static_cast<double>(a.values.size());
    const double n2 = static_cast<double>(b.values.size());
    const double n = n1 + n2;

    std::vector<double> pooled = a.values;
    pooled.insert(pooled.end(), b.values.begin(), b.values.end());
    const std::vector<double> ranks = rank_with_ties(pooled);
    double r1 = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) r1 += ranks[i];
    const double u1 = r1 - n1 * (n1 + 1.0) / 2.0;

    const double mean = n1 * n2 / 2.0;
    const double variance =
        n1 * n2 / 12.0 * ((n + 1.0) - detail::tie_term(pooled) / (n * (n - 1.0)));
    if (!(variance > 0.0)) return {u1, 1.0, std::nullopt};  // both groups all tied

    const double dev = std::max(std::abs(u1 - mean) - 0.5, 0.0);  // continuity correction
    const double p = 2.0 * detail::normal_sf(dev / std::sqrt(variance));
    return {u1, std::min(1.0, p), std::nullopt};
}

/// Holm step-down adjustment; results returned in the input order.
inline std::vector<double> holm_adjust(const std::vector<double>& p_values) {
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("holm_adjust: p-values must be in [0, 1]");
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&p_values](std::size_t a, std::size_t b) {
        return p_values[a] < p_values[b];
    });
    std::vector<double> adjusted(m);
    double running = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double scaled = std::min(1.0, static_cast<double>(m - i) * p_values[order[i]]);
        running = std::max(running, scaled);
        adjusted[order[i]] = running;
    }
    return adjusted;
}

enum class SignificanceLevel {
    strong,   // adjusted p < 0.01
    weak,     // adjusted p < 0.05
    none,     // no significance
};

struct SignificanceSymbol {
    SignificanceLevel level = SignificanceLevel::none;
    std::string better;  // label of the group with the lower median

    const char* utf8() const {
        switch (level) {
            case SignificanceLevel::strong: return "≫";  // >>
            case SignificanceLevel::weak: return ">";
            case SignificanceLevel::none: return "≈";  // ~
        }
        return "?";
    }
    const char* ascii() const {
        switch (level) {
            case SignificanceLevel::strong: return ">>";
            case SignificanceLevel::weak: return ">";
            case SignificanceLevel::none: return "~";
        }
        return "?";
    }
};

inline SignificanceSymbol render_significance(double adjusted_p, std::string better) {
    if (!(adjusted_p >= 0.0 && adjusted_p <= 1.0))
        throw std::invalid_argument("render_significance: p must be in [0, 1]");
    SignificanceSymbol sym;
    sym.better = std::move(better);
    if (adjusted_p < 0.01)
        sym.level = SignificanceLevel::strong;
    else if (adjusted_p < 0.05)
        sym.level = SignificanceLevel::weak;
    else
        sym.level = SignificanceLevel::none;
    return sym;
}

inline double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline double mean(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean: empty input");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

inline double sample_stddev(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(values.size() - 1));
}

/// Which of two groups is "better" (lower median, ties by lower mean,
/// then label a wins so the choice is deterministic).
inline const std::string& better_of(const SampleGroup& a, const SampleGroup& b) {
    const double ma = median(a.values), mb = median(b.values);
    if (ma != mb) return ma < mb ? a.label : b.label;
    return mean(a.values) <= mean(b.values) ? a.label : b.label;
}

}  // namespace convpoint::stats
