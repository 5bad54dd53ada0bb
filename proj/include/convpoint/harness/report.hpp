#pragma once

#include <iomanip>
#include <map>
#include <sstream>

#include "convpoint/harness/experiment.hpp"
#include "convpoint/harness/io.hpp"
#include "convpoint/stats.hpp"

namespace convpoint::harness {

/// Statistical comparison of the algorithms, one cell per
/// (function, dimension): group summaries, the Kruskal-Wallis omnibus
/// result, and all pairwise Mann-Whitney tests Holm-adjusted within the
/// cell's family.
struct ComparisonReport {
    struct GroupSummary {
        std::string algorithm;
        int n = 0;
        double mean = 0.0;
        double median = 0.0;
        double stddev = 0.0;
        bool flagged = false;  // reduced n (failed runs)
    };
    struct PairResult {
        std::string a;
        std::string b;
        double u_statistic = 0.0;
        double p_raw = 1.0;
        double p_adjusted = 1.0;
        stats::SignificanceSymbol symbol;
    };
    struct Cell {
        std::string function;
        int dimension = 0;
        std::vector<GroupSummary> groups;
        stats::TestResult kruskal;
        std::vector<PairResult> pairs;
    };

    std::vector<std::string> algorithms;  // column order
    std::vector<Cell> cells;
};

/// Builds the report from result rows. Cells appear in (dimension,
/// function) order; algorithms keep their first-seen order. Groups whose
/// trial count falls short of the cell maximum are flagged.
inline ComparisonReport build_report(const std::vector<ResultRow>& rows) {
    ComparisonReport report;
    // first-seen algorithm order
    for (const auto& r : rows)
        if (std::find(report.algorithms.begin(), report.algorithms.end(), r.algorithm) ==
            report.algorithms.end())
            report.algorithms.push_back(r.algorithm);
    if (report.algorithms.size() < 2)
        throw std::invalid_argument("build_report: need at least 2 algorithms");

    std::map<std::pair<int, std::string>, std::map<std::string, std::vector<double>>> cells;
    for (const auto& r : rows)
        cells[{r.dimension, r.function}][r.algorithm].push_back(r.best_fitness);

    for (auto& [key, by_algo] : cells) {
        ComparisonReport::Cell cell;
        cell.dimension = key.first;
        cell.function = key.second;

        std::vector<stats::SampleGroup> groups;
        std::size_t max_n = 0;
        for (const auto& name : report.algorithms) {
            auto it = by_algo.find(name);
            if (it == by_algo.end()) continue;
            groups.push_back({name, it->second});
            max_n = std::max(max_n, it->second.size());
        }
        if (groups.size() < 2)
            throw std::invalid_argument("build_report: cell " + cell.function +
                                        " has fewer than 2 algorithms");
        for (const auto& g : groups) {
            if (g.values.size() < 2)
                throw std::invalid_argument("build_report: group " + g.label + " in " +
                                            cell.function + " has fewer than 2 trials");
            ComparisonReport::GroupSummary s;
            s.algorithm = g.label;
            s.n = static_cast<int>(g.values.size());
            s.mean = stats::mean(g.values);
            s.median = stats::median(g.values);
            s.stddev = stats::sample_stddev(g.values);
            s.flagged = g.values.size() < max_n;
            cell.groups.push_back(s);
        }

        cell.kruskal = stats::kruskal_wallis(groups);

        std::vector<double> raw;
        std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j) {
                index_pairs.emplace_back(i, j);
                raw.push_back(stats::mann_whitney_u(groups[i], groups[j]).p_value);
            }
        const std::vector<double> adjusted = stats::holm_adjust(raw);

        for (std::size_t p = 0; p < index_pairs.size(); ++p) {
            const auto& [i, j] = index_pairs[p];
            ComparisonReport::PairResult pr;
            pr.a = groups[i].label;
            pr.b = groups[j].label;
            pr.u_statistic = stats::mann_whitney_u(groups[i], groups[j]).statistic;
            pr.p_raw = raw[p];
            pr.p_adjusted = adjusted[p];
            pr.symbol =
                stats::render_significance(adjusted[p], stats::better_of(groups[i], groups[j]));
            cell.pairs.push_back(std::move(pr));
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline std::string summary_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "function,dimension,algorithm,n,mean,median,stddev,flagged\n";
    for (const auto& cell : report.cells)
        for (const auto& g : cell.groups)
            out << cell.function << ',' << cell.dimension << ',' << g.algorithm << ',' << g.n
                << ',' << format_double(g.mean) << ',' << format_double(g.median) << ','
                << format_double(g.stddev) << ',' << (g.flagged ? 1 : 0) << '\n';
    return out.str();
}

inline std::string kruskal_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "function,dimension,h_statistic,p_value\n";
    for (const auto& cell : report.cells)
        out << cell.function << ',' << cell.dimension << ','
            << format_double(cell.kruskal.statistic) << ','
            << format_double(cell.kruskal.p_value) << '\n';
    return out.str();
}

inline std::string pairwise_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "function,dimension,algorithm_a,algorithm_b,u_statistic,p_raw,p_holm,symbol,better\n";
    for (const auto& cell : report.cells)
        for (const auto& p : cell.pairs)
            out << cell.function << ',' << cell.dimension << ',' << p.a << ',' << p.b << ','
                << format_double(p.u_statistic) << ',' << format_double(p.p_raw) << ','
                << format_double(p.p_adjusted) << ',' << p.symbol.ascii() << ','
                << p.symbol.better << '\n';
    return out.str();
}

namespace detail {

inline std::string fixed(double v, int precision = 4) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(precision) << v;
    return s.str();
}

inline void pad(std::ostringstream& out, const std::string& text, std::size_t width) {
    out << text;
    for (std::size_t i = text.size(); i < width; ++i) out << ' ';
}

}  // namespace detail

/// mean +- std grid, one row per (function, dimension), one column per
/// algorithm.
inline std::string summary_table(const ComparisonReport& report) {
    const std::size_t name_w = 36, col_w = 26;
    std::ostringstream out;
    detail::pad(out, "function", name_w);
    detail::pad(out, "D", 4);
    for (const auto& a : report.algorithms) detail::pad(out, a, col_w);
    out << '\n';
    for (const auto& cell : report.cells) {
        detail::pad(out, cell.function, name_w);
        detail::pad(out, std::to_string(cell.dimension), 4);
        for (const auto& a : report.algorithms) {
            std::string text = "-";
            for (const auto& g : cell.groups)
                if (g.algorithm == a) {
                    text = detail::fixed(g.mean) + " +- " + detail::fixed(g.stddev, 2);
                    if (g.flagged) text += " *";
                }
            detail::pad(out, text, col_w);
        }
        out << '\n';
    }
    out << "\n(* reduced trial count)\n";
    return out.str();
}

/// Pairwise significance grid (UTF-8 symbols), one row per pair per cell.
inline std::string significance_table(const ComparisonReport& report) {
    const std::size_t name_w = 36;
    std::ostringstream out;
    detail::pad(out, "function", name_w);
    detail::pad(out, "D", 4);
    detail::pad(out, "pair", 22);
    detail::pad(out, "adj. p", 14);
    out << "verdict\n";
    for (const auto& cell : report.cells)
        for (const auto& p : cell.pairs) {
            detail::pad(out, cell.function, name_w);
            detail::pad(out, std::to_string(cell.dimension), 4);
            detail::pad(out, p.a + " vs " + p.b, 22);
            detail::pad(out, detail::fixed(p.p_adjusted), 14);
            if (p.symbol.level == stats::SignificanceLevel::none)
                out << p.a << ' ' << p.symbol.utf8() << ' ' << p.b;
            else
                out << p.symbol.better << ' ' << p.symbol.utf8() << ' '
                    << (p.symbol.better == p.a ? p.b : p.a);
            out << '\n';
        }
    return out.str();
}

enum class TableFormat { csv, aligned_text };

/// Writes the report tables into a directory: summary/kruskal/pairwise csv
/// files or the two aligned-text tables.
inline void emit_tables(const ComparisonReport& report, TableFormat format,
                        const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    if (format == TableFormat::csv) {
        write_file((fs::path(dir) / "summary.csv").string(), summary_csv(report));
        write_file((fs::path(dir) / "kruskal.csv").string(), kruskal_csv(report));
        write_file((fs::path(dir) / "pairwise.csv").string(), pairwise_csv(report));
    } else {
        write_file((fs::path(dir) / "summary.txt").string(), summary_table(report));
        write_file((fs::path(dir) / "significance.txt").string(), significance_table(report));
    }
}

/// Reads back the numeric content written by summary_csv; used to verify
/// the emit/parse round trip.
struct SummaryRowParsed {
    std::string function;
    int dimension;
    std::string algorithm;
    int n;
    double mean, median, stddev;
    bool flagged;
};

inline std::vector<SummaryRowParsed> parse_summary_csv(const std::vector<std::string>& lines) {
    if (lines.empty() || lines[0] != "function,dimension,algorithm,n,mean,median,stddev,flagged")
        throw std::runtime_error("summary csv: missing or wrong header");
    std::vector<SummaryRowParsed> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 8) throw std::runtime_error("summary csv: bad row");
        rows.push_back({f[0], std::stoi(f[1]), f[2], std::stoi(f[3]), parse_double(f[4]),
                        parse_double(f[5]), parse_double(f[6]), f[7] == "1"});
    }
    return rows;
}

}  // namespace convpoint::harness
