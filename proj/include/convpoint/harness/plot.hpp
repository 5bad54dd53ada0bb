#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "convpoint/harness/io.hpp"
#include "convpoint/optimizers/config.hpp"

namespace convpoint::harness {

/// Median and quartiles of one algorithm's best-so-far curves on the
/// common evaluation grid of its trials.
struct CurveSeries {
    std::string algorithm;
    std::vector<std::int64_t> evaluations;
    std::vector<double> q1, median, q3;
};

namespace detail {

inline double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % 8];
}

}  // namespace detail

/// Aggregates trial histories into one series per algorithm. Only
/// evaluation counts present in every trial of an algorithm are kept, so
/// quartiles are always over the full trial set.
inline std::vector<CurveSeries> aggregate_curves(
    const std::vector<std::pair<std::string, std::vector<std::vector<HistoryPoint>>>>&
        histories_by_algorithm) {
    std::vector<CurveSeries> series;
    for (const auto& [algorithm, trials] : histories_by_algorithm) {
        if (trials.empty()) continue;
        std::map<std::int64_t, std::vector<double>> at;
        for (const auto& trial : trials)
            for (const auto& hp : trial) at[hp.evaluations].push_back(hp.best_so_far);
        CurveSeries s;
        s.algorithm = algorithm;
        for (auto& [evals, values] : at) {
            if (values.size() != trials.size()) continue;
            s.evaluations.push_back(evals);
            s.q1.push_back(detail::quantile(values, 0.25));
            s.median.push_back(detail::quantile(values, 0.5));
            s.q3.push_back(detail::quantile(values, 0.75));
        }
        if (!s.evaluations.empty()) series.push_back(std::move(s));
    }
    return series;
}

inline std::string curves_csv(const std::vector<CurveSeries>& series) {
    std::ostringstream out;
    out << "algorithm,evaluations,q1,median,q3\n";
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.evaluations.size(); ++i)
            out << s.algorithm << ',' << s.evaluations[i] << ',' << format_double(s.q1[i])
                << ',' << format_double(s.median[i]) << ',' << format_double(s.q3[i]) << '\n';
    return out.str();
}

/// Self-contained SVG: median best-so-far gap to the bias per algorithm,
/// with the interquartile band. The y axis is log10 of the gap when every
/// plotted value is positive, linear otherwise.
inline std::string curves_svg(const std::vector<CurveSeries>& series, const std::string& title,
                              double bias) {
    const double width = 860, height = 540;
    const double ml = 80, mr = 200, mt = 50, mb = 60;
    const double pw = width - ml - mr, ph = height - mt - mb;

    bool log_scale = true;
    double x_max = 1, y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.evaluations.size(); ++i) {
            x_max = std::max(x_max, static_cast<double>(s.evaluations[i]));
            for (double v : {s.q1[i], s.median[i], s.q3[i]}) {
                const double gap = v - bias;
                if (!(gap > 0.0)) log_scale = false;
                y_min = std::min(y_min, gap);
                y_max = std::max(y_max, gap);
            }
        }
    }
    if (!(y_min < y_max)) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    auto transform_y = [&](double gap) { return log_scale ? std::log10(gap) : gap; };
    double ty_min = log_scale ? std::log10(y_min) : y_min;
    double ty_max = log_scale ? std::log10(y_max) : y_max;
    if (ty_max - ty_min < 1e-12) {
        ty_min -= 1.0;
        ty_max += 1.0;
    }

    auto px = [&](double evals) { return ml + pw * evals / x_max; };
    auto py = [&](double gap) {
        return mt + ph * (1.0 - (transform_y(gap) - ty_min) / (ty_max - ty_min));
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << ml << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";

    // y ticks
    const int ticks = 6;
    for (int t = 0; t <= ticks; ++t) {
        const double ty = ty_min + (ty_max - ty_min) * t / ticks;
        const double y = mt + ph * (1.0 - static_cast<double>(t) / ticks);
        std::ostringstream label;
        if (log_scale)
            label << "1e" << std::fixed << std::setprecision(1) << ty;
        else
            label << std::scientific << std::setprecision(1) << ty;
        svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
            << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << label.str() << "</text>\n";
    }
    // x ticks
    for (int t = 0; t <= 5; ++t) {
        const double xv = x_max * t / 5;
        const double x = px(xv);
        svg << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x << "\" y2=\""
            << mt + ph + 4 << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << static_cast<long long>(xv) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << "evaluations</text>\n";
    svg << "<text x=\"20\" y=\"" << mt + ph / 2
        << "\" transform=\"rotate(-90 20 " << mt + ph / 2
        << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << (log_scale ? "best-so-far gap to optimum (log)" : "best-so-far gap to optimum")
        << "</text>\n";

    // quartile bands then medians, so lines stay visible
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::ostringstream band;
        for (std::size_t i = 0; i < s.evaluations.size(); ++i)
            band << px(static_cast<double>(s.evaluations[i])) << ',' << py(s.q3[i] - bias) << ' ';
        for (std::size_t i = s.evaluations.size(); i-- > 0;)
            band << px(static_cast<double>(s.evaluations[i])) << ',' << py(s.q1[i] - bias) << ' ';
        svg << "<polygon points=\"" << band.str() << "\" fill=\"" << detail::series_color(si)
            << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::ostringstream line;
        for (std::size_t i = 0; i < s.evaluations.size(); ++i)
            line << px(static_cast<double>(s.evaluations[i])) << ',' << py(s.median[i] - bias)
                 << ' ';
        svg << "<polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\""
            << detail::series_color(si) << "\" stroke-width=\"1.8\"/>\n";
        const double ly = mt + 16 + 18 * static_cast<double>(si);
        svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 36
            << "\" y2=\"" << ly << "\" stroke=\"" << detail::series_color(si)
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << ml + pw + 42 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.algorithm << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

/// Writes <stem>.svg and the <stem>.csv sidecar with the plotted points.
/// Returns false (and writes nothing) when there is no history to plot.
inline bool emit_convergence_plot(
    const std::vector<std::pair<std::string, std::vector<std::vector<HistoryPoint>>>>&
        histories_by_algorithm,
    const std::string& function, int dimension, double bias, const std::string& stem) {
    auto series = aggregate_curves(histories_by_algorithm);
    if (series.empty()) return false;
    std::ostringstream title;
    title << function << ", " << dimension << "-D (median of "
          << histories_by_algorithm.front().second.size() << " trials, IQR band)";
    write_file(stem + ".svg", curves_svg(series, title.str(), bias));
    write_file(stem + ".csv", curves_csv(series));
    return true;
}

}  // namespace convpoint::harness
