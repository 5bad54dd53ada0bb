#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "convpoint/rng.hpp"
#include "convpoint/stats.hpp"
#include "oracle/stats_golden.hpp"

using namespace convpoint;
using namespace convpoint::stats;
using Catch::Approx;

TEST_CASE("rank_with_ties hand cases") {
    REQUIRE(rank_with_ties({10, 20, 30}) == std::vector<double>{1, 2, 3});
    REQUIRE(rank_with_ties({5, 5}) == std::vector<double>{1.5, 1.5});
    REQUIRE(rank_with_ties({1, 2, 2, 3}) == std::vector<double>{1, 2.5, 2.5, 4});
    REQUIRE_THROWS_AS(rank_with_ties({1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("ranks always sum to N(N+1)/2") {
    RngStream rng(3);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t n = 1 + rng.uniform_index(40);
        std::vector<double> values(n);
        for (double& v : values) v = std::round(rng.uniform(-5.0, 5.0));  // force ties
        auto ranks = rank_with_ties(values);
        double sum = 0.0;
        for (double r : ranks) sum += r;
        REQUIRE(sum == Approx(n * (n + 1) / 2.0).margin(1e-9));
    }
}

TEST_CASE("kruskal_wallis and mann_whitney_u match the brute-force oracle") {
    for (const auto& c : golden::stats_cases()) {
        std::vector<SampleGroup> groups;
        for (std::size_t g = 0; g < c.groups.size(); ++g)
            groups.push_back({"g" + std::to_string(g), c.groups[g]});

        TestResult kw = kruskal_wallis(groups);
        REQUIRE(kw.statistic == Approx(c.kw_h).margin(1e-9));
        REQUIRE(kw.p_value == Approx(c.kw_p).margin(1e-6));

        TestResult mwu = mann_whitney_u(groups[0], groups[1]);
        REQUIRE(mwu.statistic == Approx(c.mwu_u).margin(1e-9));
        REQUIRE(mwu.p_value == Approx(c.mwu_p).margin(1e-6));
    }
}

TEST_CASE("identical pooled values give H = 0, p = 1") {
    TestResult kw = kruskal_wallis({{"a", {5, 5, 5}}, {"b", {5, 5, 5}}});
    REQUIRE(kw.statistic == 0.0);
    REQUIRE(kw.p_value == 1.0);
}

TEST_CASE("kruskal_wallis is invariant under strictly monotone transforms") {
    std::vector<SampleGroup> raw = {{"a", {0.3, 1.2, -0.7, 2.2, 0.3}},
                                    {"b", {1.5, 0.9, 3.1, -0.2}},
                                    {"c", {-1.0, -0.5, 0.0, 0.4, 1.1}}};
    std::vector<SampleGroup> mapped = raw;
    for (auto& g : mapped)
        for (double& v : g.values) v = std::exp(v);  // strictly increasing
    REQUIRE(kruskal_wallis(raw).statistic ==
            Approx(kruskal_wallis(mapped).statistic).margin(1e-12));
}

TEST_CASE("well-separated groups are overwhelmingly significant") {
    RngStream rng(10);
    std::vector<double> a, b;
    for (int i = 0; i < 30; ++i) {
        a.push_back(rng.gaussian(0.0, 1.0));
        b.push_back(rng.gaussian(10.0, 1.0));
    }
    REQUIRE(kruskal_wallis({{"a", a}, {"b", b}}).p_value < 1e-6);
    REQUIRE(mann_whitney_u({"a", a}, {"b", b}).p_value < 1e-6);
}

TEST_CASE("mann_whitney_u hand cases") {
    // complete separation: a wins zero of the 9 pairs
    TestResult t = mann_whitney_u({"a", {1, 2, 3}}, {"b", {4, 5, 6}});
    REQUIRE(t.statistic == 0.0);

    // identical multisets: dead-center U, p capped at 1
    TestResult s = mann_whitney_u({"a", {1, 2, 3, 4}}, {"b", {1, 2, 3, 4}});
    REQUIRE(s.statistic == 8.0);  // n*m/2
    REQUIRE(s.p_value == 1.0);
}

TEST_CASE("U statistics of the two orientations are complementary") {
    RngStream rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<double> a, b;
        const std::size_t na = 2 + rng.uniform_index(12), nb = 2 + rng.uniform_index(12);
        for (std::size_t i = 0; i < na; ++i) a.push_back(std::round(rng.uniform(0, 10)));
        for (std::size_t i = 0; i < nb; ++i) b.push_back(std::round(rng.uniform(0, 10)));
        const double u_ab = mann_whitney_u({"a", a}, {"b", b}).statistic;
        const double u_ba = mann_whitney_u({"b", b}, {"a", a}).statistic;
        REQUIRE(u_ab + u_ba == Approx(double(na * nb)).margin(1e-9));
    }
}

TEST_CASE("holm_adjust hand cases") {
    REQUIRE(holm_adjust({0.02}) == std::vector<double>{0.02});

    auto adjusted = holm_adjust({0.01, 0.04, 0.03});
    // step-down: 3*0.01, then max(0.03, 2*0.03), then max(prev, 1*0.04)
    REQUIRE(adjusted[0] == 3 * 0.01);
    REQUIRE(adjusted[1] == 2 * 0.03);
    REQUIRE(adjusted[2] == 2 * 0.03);
    REQUIRE(adjusted[0] == Approx(0.03).margin(1e-12));
    REQUIRE(adjusted[1] == Approx(0.06).margin(1e-12));
    REQUIRE(adjusted[2] == Approx(0.06).margin(1e-12));

    REQUIRE(holm_adjust({1.0, 1.0, 1.0}) == std::vector<double>{1.0, 1.0, 1.0});
    REQUIRE_THROWS_AS(holm_adjust({-0.1}), std::invalid_argument);
}

TEST_CASE("holm_adjust never lowers a p-value and is permutation-equivariant") {
    RngStream rng(12);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t m = 1 + rng.uniform_index(8);
        std::vector<double> p(m);
        for (double& v : p) v = rng.uniform();
        auto adjusted = holm_adjust(p);
        for (std::size_t i = 0; i < m; ++i) {
            REQUIRE(adjusted[i] >= p[i]);
            REQUIRE(adjusted[i] <= 1.0);
        }
        // reverse the inputs: outputs reverse identically
        std::vector<double> rev(p.rbegin(), p.rend());
        auto adjusted_rev = holm_adjust(rev);
        for (std::size_t i = 0; i < m; ++i)
            REQUIRE(adjusted_rev[i] == Approx(adjusted[m - 1 - i]).margin(1e-15));
    }
}

TEST_CASE("significance symbols follow the thresholds") {
    REQUIRE(render_significance(0.005, "x").level == SignificanceLevel::strong);
    REQUIRE(render_significance(0.03, "x").level == SignificanceLevel::weak);
    REQUIRE(render_significance(0.5, "x").level == SignificanceLevel::none);
    REQUIRE(render_significance(0.01, "x").level == SignificanceLevel::weak);   // boundary
    REQUIRE(render_significance(0.05, "x").level == SignificanceLevel::none);   // boundary
    REQUIRE(std::string(render_significance(0.005, "x").ascii()) == ">>");
    REQUIRE(std::string(render_significance(0.03, "x").ascii()) == ">");
    REQUIRE(std::string(render_significance(0.5, "x").ascii()) == "~");
}

TEST_CASE("better_of prefers the lower median, then the lower mean") {
    SampleGroup a{"a", {1, 2, 100}};
    SampleGroup b{"b", {3, 4, 5}};
    REQUIRE(better_of(a, b) == "a");  // median 2 vs 4
    SampleGroup c{"c", {1, 4, 7}};
    SampleGroup d{"d", {2, 4, 5}};
    REQUIRE(better_of(c, d) == "d");  // medians tie at 4, mean 11/3 < 4
}

TEST_CASE("empty and undersized inputs are rejected") {
    REQUIRE_THROWS_AS(kruskal_wallis({{"a", {1.0}}}), std::invalid_argument);
    REQUIRE_THROWS_AS(kruskal_wallis({{"a", {1.0}}, {"b", {}}}), std::invalid_argument);
    REQUIRE_THROWS_AS(mann_whitney_u({"a", {}}, {"b", {1.0}}), std::invalid_argument);
}
