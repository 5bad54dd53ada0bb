#include <catch2/catch_amalgamated.hpp>

#include "convpoint/accelerated.hpp"
#include "convpoint/benchmarks.hpp"
#include "test_util.hpp"

using namespace convpoint;
using Catch::Approx;

namespace {

void require_identical(const RunRecord& a, const RunRecord& b) {
    REQUIRE(a.best_fitness == b.best_fitness);
    REQUIRE(a.best_genome == b.best_genome);
    REQUIRE(a.evaluations_used == b.evaluations_used);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        REQUIRE(a.history[i].evaluations == b.history[i].evaluations);
        REQUIRE(a.history[i].best_so_far == b.history[i].best_so_far);
    }
}

}  // namespace

TEST_CASE("sample_count = 0 reduces bitwise to plain DE") {
    auto problems = bench::suite(2, 5);
    for (std::size_t fi : {std::size_t{0}, std::size_t{7}, std::size_t{10}}) {
        for (std::uint64_t seed : {11u, 22u, 33u}) {
            Budget b_plain(default_budget(2)), b_accel(default_budget(2));
            RngStream r_plain(seed), r_accel(seed);

            OptimizerConfig de_cfg;
            de_cfg.algorithm = Algorithm::de;
            RunRecord plain = run_de(problems[fi], de_cfg, b_plain, r_plain);

            AcceleratedConfig acfg;
            acfg.sample_count = 0;
            RunRecord accel = run_accelerated_de(problems[fi], acfg, b_accel, r_accel);

            INFO(problems[fi].name << " seed " << seed);
            require_identical(plain, accel);
        }
    }
}

TEST_CASE("accelerated runs are deterministic per (variant, seed)") {
    auto p = test_util::sphere_problem(2);
    for (AcceleratedVariant variant : {AcceleratedVariant::p1, AcceleratedVariant::p2}) {
        AcceleratedConfig cfg;
        cfg.variant = variant;
        Budget b1(2000), b2(2000);
        RngStream r1(9), r2(9);
        require_identical(run_accelerated_de(p, cfg, b1, r1),
                          run_accelerated_de(p, cfg, b2, r2));
    }
}

TEST_CASE("budget parity: injection evaluations live inside the budget") {
    auto p = test_util::sphere_problem(3);
    AcceleratedConfig cfg;
    Budget budget(default_budget(3));
    RngStream rng(4);
    RunRecord rec = run_accelerated_de(p, cfg, budget, rng);
    REQUIRE(rec.evaluations_used <= default_budget(3));
    REQUIRE(rec.evaluations_used == budget.used());
    REQUIRE(rec.history.back().evaluations == rec.evaluations_used);
    for (std::size_t i = 1; i < rec.history.size(); ++i)
        REQUIRE(rec.history[i].best_so_far <= rec.history[i - 1].best_so_far);
}

TEST_CASE("P1 and P2 coincide when every fitness value ties") {
    auto p = test_util::constant_problem(2, 3.5);
    AcceleratedConfig p1_cfg, p2_cfg;
    p1_cfg.variant = AcceleratedVariant::p1;
    p1_cfg.elite_rate = 1.0;
    p2_cfg.variant = AcceleratedVariant::p2;
    p2_cfg.elite_rate = 1.0;
    Budget b1(1500), b2(1500);
    RngStream r1(6), r2(6);
    require_identical(run_accelerated_de(p, p1_cfg, b1, r1),
                      run_accelerated_de(p, p2_cfg, b2, r2));
}

TEST_CASE("injection only ever evaluates in-bounds genomes") {
    auto p = bounds_checked(test_util::sphere_problem(2));
    for (AcceleratedVariant variant : {AcceleratedVariant::p1, AcceleratedVariant::p2}) {
        AcceleratedConfig cfg;
        cfg.variant = variant;
        cfg.sigma = 500.0;  // samples frequently leave the box before clamping
        Budget budget(1200);
        RngStream rng(13);
        REQUIRE_NOTHROW(run_accelerated_de(p, cfg, budget, rng));
    }
}

TEST_CASE("acceleration: P1 and P2 beat plain DE on the 10-D sphere") {
    auto p = test_util::sphere_problem(10);
    double de_sum = 0.0, p1_sum = 0.0, p2_sum = 0.0;
    const int trials = 10;
    for (int seed = 0; seed < trials; ++seed) {
        OptimizerConfig de_cfg;
        de_cfg.algorithm = Algorithm::de;
        Budget bd(default_budget(10));
        RngStream rd(seed);
        de_sum += run_de(p, de_cfg, bd, rd).best_fitness;

        AcceleratedConfig c1;
        Budget b1(default_budget(10));
        RngStream r1(seed);
        p1_sum += run_accelerated_de(p, c1, b1, r1).best_fitness;

        AcceleratedConfig c2;
        c2.variant = AcceleratedVariant::p2;
        Budget b2(default_budget(10));
        RngStream r2(seed);
        p2_sum += run_accelerated_de(p, c2, b2, r2).best_fitness;
    }
    REQUIRE(p1_sum / trials <= de_sum / trials);
    REQUIRE(p2_sum / trials <= de_sum / trials);
}

TEST_CASE("estimate logging records one point per injecting generation") {
    auto p = test_util::sphere_problem(2);
    AcceleratedConfig cfg;
    cfg.log_estimates = true;
    Budget budget(default_budget(2));
    RngStream rng(3);
    RunRecord rec = run_accelerated_de(p, cfg, budget, rng);
    REQUIRE_FALSE(rec.estimates.empty());
    for (std::size_t i = 0; i < rec.estimates.size(); ++i) {
        const auto& e = rec.estimates[i];
        REQUIRE(e.method == "AS");
        REQUIRE(e.coordinates.size() == 2);
        REQUIRE(e.generation == static_cast<int>(i) + 1);
        REQUIRE(within_bounds(e.coordinates, p));
    }
    // off by default, and P2 logs WAS
    Budget b2(default_budget(2));
    RngStream r2(3);
    AcceleratedConfig quiet;
    REQUIRE(run_accelerated_de(p, quiet, b2, r2).estimates.empty());
    AcceleratedConfig p2_cfg;
    p2_cfg.variant = AcceleratedVariant::p2;
    p2_cfg.log_estimates = true;
    Budget b3(default_budget(2));
    RngStream r3(3);
    REQUIRE(run_accelerated_de(p, p2_cfg, b3, r3).estimates.front().method == "WAS");
}

TEST_CASE("explicit sample_count and elite-coupled default") {
    AcceleratedConfig cfg;
    REQUIRE(cfg.resolve_sample_count(100) == 5);  // elite 0.05 of 100
    REQUIRE(cfg.resolve_sample_count(10) == 1);   // floor-to-one
    cfg.sample_count = 3;
    REQUIRE(cfg.resolve_sample_count(100) == 3);
}

TEST_CASE("invalid accelerated configurations are rejected") {
    AcceleratedConfig bad_rate;
    bad_rate.elite_rate = 0.0;
    REQUIRE_THROWS_AS(bad_rate.validate(2), std::invalid_argument);

    AcceleratedConfig bad_sigma;
    bad_sigma.sigma = 0.0;
    REQUIRE_THROWS_AS(bad_sigma.validate(2), std::invalid_argument);

    AcceleratedConfig bad_k;
    bad_k.de.population_size = 10;
    bad_k.sample_count = 10;  // k must stay below PS
    REQUIRE_THROWS_AS(bad_k.validate(2), std::invalid_argument);
}
