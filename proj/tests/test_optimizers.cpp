#include <catch2/catch_amalgamated.hpp>

#include "convpoint/optimizers/run.hpp"
#include "regression_values.hpp"
#include "test_util.hpp"

using namespace convpoint;
using Catch::Approx;

namespace {

OptimizerConfig config_for(Algorithm algo, int population_size = 0) {
    OptimizerConfig cfg;
    cfg.algorithm = algo;
    cfg.population_size = population_size;
    return cfg;
}

void require_monotone(const RunRecord& rec) {
    for (std::size_t i = 1; i < rec.history.size(); ++i) {
        REQUIRE(rec.history[i].best_so_far <= rec.history[i - 1].best_so_far);
        REQUIRE(rec.history[i].evaluations > rec.history[i - 1].evaluations);
    }
    REQUIRE_FALSE(rec.history.empty());
    REQUIRE(rec.history.back().best_so_far == rec.best_fitness);
    REQUIRE(rec.history.back().evaluations == rec.evaluations_used);
}

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

// --- DE operators -----------------------------------------------------------

TEST_CASE("de donor formulas, hand arithmetic") {
    REQUIRE(de_donor_rand1({1.0, 1.0}, {2.0, 2.0}, {0.0, 0.0}, 0.7) == Genome{2.4, 2.4});
    // zero difference vector collapses best/1 onto the best member
    REQUIRE(de_donor_best1({5.0, -3.0}, {9.0, 9.0}, {9.0, 9.0}, 123.0) == Genome{5.0, -3.0});
    // current == best and p1 == p2 is a fixed point
    REQUIRE(de_donor_current_to_best1({4.0, 4.0}, {4.0, 4.0}, {7.0, 1.0}, {7.0, 1.0}, 0.7) ==
            Genome{4.0, 4.0});
}

TEST_CASE("de_mutation produces one donor per member and needs enough members") {
    Population pop;
    for (int i = 0; i < 6; ++i)
        pop.push_back({{double(i), double(-i)}, double(i)});
    RngStream rng(3);
    auto donors = de_mutation(pop, DeStrategy::rand_1, 0.7, rng);
    REQUIRE(donors.size() == pop.size());

    Population tiny = {pop[0], pop[1], pop[2]};
    REQUIRE_THROWS_AS(de_mutation(tiny, DeStrategy::rand_1, 0.7, rng), std::invalid_argument);
}

TEST_CASE("de_crossover at the rate extremes") {
    RngStream rng(5);
    Genome target = {1.0, 1.0, 1.0, 1.0};
    Genome donor = {2.0, 3.0, 4.0, 5.0};
    REQUIRE(de_crossover(target, donor, 1.0, rng) == donor);

    for (int i = 0; i < 50; ++i) {
        Genome trial = de_crossover(target, donor, 0.0, rng);
        int changed = 0;
        for (std::size_t d = 0; d < target.size(); ++d)
            if (trial[d] != target[d]) ++changed;
        REQUIRE(changed == 1);  // only the forced gene
    }
}

TEST_CASE("de_crossover donor-gene count matches the binomial expectation") {
    RngStream rng(11);
    const int dim = 10, trials = 100000;
    Genome target(dim, 0.0), donor(dim, 1.0);
    long long total = 0;
    for (int i = 0; i < trials; ++i) {
        Genome trial = de_crossover(target, donor, 0.9, rng);
        for (double g : trial) total += g == 1.0 ? 1 : 0;
    }
    const double mean = static_cast<double>(total) / trials;
    const double expected = 1.0 + 0.9 * 9.0;
    const double sigma = std::sqrt(9.0 * 0.9 * 0.1 / trials);
    REQUIRE(std::abs(mean - expected) < 3.0 * sigma);
}

TEST_CASE("de_selection is greedy with ties to the trial") {
    Individual target{{0.0}, 2.0}, trial{{1.0}, 1.0};
    REQUIRE(&de_selection(target, trial) == &trial);
    Individual target2{{0.0}, 1.0}, trial2{{1.0}, 2.0};
    REQUIRE(&de_selection(target2, trial2) == &target2);
    Individual target3{{0.0}, 1.5}, trial3{{1.0}, 1.5};
    REQUIRE(&de_selection(target3, trial3) == &trial3);
}

TEST_CASE("DE per-slot fitness never increases across generations") {
    auto p = test_util::sphere_problem(3);
    Budget budget(2000);
    RngStream rng(17);
    OptimizerConfig cfg = config_for(Algorithm::de, 20);
    RunTracker tracker(20);
    Population pop = init_population(p, 20, budget, rng);
    for (const auto& ind : pop) tracker.observe(ind.genome, ind.fitness);
    while (!budget.exhausted()) {
        std::vector<double> before;
        for (const auto& ind : pop) before.push_back(ind.fitness);
        if (!de_generation(p, pop, cfg, budget, rng, tracker)) break;
        for (std::size_t i = 0; i < pop.size(); ++i) REQUIRE(pop[i].fitness <= before[i]);
    }
}

TEST_CASE("run_de is monotone, budget-bounded and deterministic") {
    auto p = test_util::sphere_problem(2);
    Budget b1(2000), b2(2000);
    RngStream r1(21), r2(21);
    OptimizerConfig cfg = config_for(Algorithm::de);
    RunRecord a = run_de(p, cfg, b1, r1);
    RunRecord b = run_de(p, cfg, b2, r2);
    require_monotone(a);
    require_identical(a, b);
    REQUIRE(a.evaluations_used <= 2000);
    REQUIRE(b1.used() == a.evaluations_used);
}

// --- RS ----------------------------------------------------------------------

TEST_CASE("run_rs improves monotonically and respects the budget") {
    auto p = test_util::sphere_problem(2);
    Budget budget(2000);
    RngStream rng(1);
    RunRecord rec = run_rs(p, config_for(Algorithm::rs), budget, rng);
    require_monotone(rec);
    REQUIRE(rec.evaluations_used == 2000);
    REQUIRE(rec.history.front().best_so_far >= rec.best_fitness);
}

TEST_CASE("run_rs on a constant function never replaces the incumbent") {
    auto p = test_util::constant_problem(2, 7.0);
    Budget budget(100);
    RngStream rng(2);
    // replay the first draw to know the initial sample
    RngStream probe(2);
    Genome first = random_genome(p, probe);
    RunRecord rec = run_rs(p, config_for(Algorithm::rs), budget, rng);
    REQUIRE(rec.best_fitness == 7.0);
    REQUIRE(rec.best_genome == first);  // strict improvement required to replace
}

TEST_CASE("run_rs neighborhood mode stays in bounds") {
    auto p = bounds_checked(test_util::sphere_problem(2));
    Budget budget(500);
    RngStream rng(3);
    OptimizerConfig cfg = config_for(Algorithm::rs);
    cfg.rs_neighborhood = true;
    RunRecord rec = run_rs(p, cfg, budget, rng);
    require_monotone(rec);
}

// RS on the 2-D sphere at the standard budget: the exact median over these
// 30 seeds is frozen as a regression anchor (observed by direct
// simulation; uniform sampling puts it near 4, not below 1).
TEST_CASE("run_rs sphere regression median") {
    auto p = test_util::sphere_problem(2);
    std::vector<double> finals;
    for (int seed = 0; seed < 30; ++seed) {
        Budget budget(2000);
        RngStream rng(seed);
        finals.push_back(run_rs(p, config_for(Algorithm::rs), budget, rng).best_fitness);
    }
    std::sort(finals.begin(), finals.end());
    const double median = 0.5 * (finals[14] + finals[15]);
    REQUIRE(median == Approx(RS_SPHERE2D_MEDIAN).epsilon(1e-12));
}

// --- GA ----------------------------------------------------------------------

TEST_CASE("run_ga keeps the elite: best never worsens") {
    auto p = test_util::sphere_problem(2);
    Budget budget(2000);
    RngStream rng(4);
    RunRecord rec = run_ga(p, config_for(Algorithm::ga), budget, rng);
    require_monotone(rec);
    REQUIRE(rec.evaluations_used <= 2000);
}

TEST_CASE("run_ga with zero rates only copies tournament winners") {
    auto p = test_util::sphere_problem(2);
    OptimizerConfig cfg = config_for(Algorithm::ga, 10);
    cfg.ga_crossover_rate = 0.0;
    cfg.ga_mutation_rate = 0.0;
    Budget budget(500);
    RngStream rng(6);
    // identical replay of the initial population
    Budget probe_budget(10);
    RngStream probe(6);
    Population init = init_population(p, 10, probe_budget, probe);
    const double init_best = best_individual(init).fitness;

    RunRecord rec = run_ga(p, cfg, budget, rng);
    REQUIRE(rec.best_fitness == init_best);  // no new genomes can appear
}

TEST_CASE("GA beats RS on the sphere at equal budget (regression)") {
    auto p = test_util::sphere_problem(2);
    double ga_sum = 0.0, rs_sum = 0.0;
    for (int seed = 0; seed < 30; ++seed) {
        Budget bga(2000), brs(2000);
        RngStream rga(seed), rrs(seed);
        ga_sum += run_ga(p, config_for(Algorithm::ga), bga, rga).best_fitness;
        rs_sum += run_rs(p, config_for(Algorithm::rs), brs, rrs).best_fitness;
    }
    const double ga_mean = ga_sum / 30.0, rs_mean = rs_sum / 30.0;
    REQUIRE(ga_mean < rs_mean);
    REQUIRE(ga_mean == Approx(GA_SPHERE2D_MEAN).epsilon(1e-12));
    REQUIRE(rs_mean == Approx(RS_SPHERE2D_MEAN).epsilon(1e-12));
}

// --- ES ----------------------------------------------------------------------

TEST_CASE("es sigma is a fraction of the domain width") {
    REQUIRE(es_mutation_sigma(0.2, -100.0, 100.0) == 40.0);
}

TEST_CASE("run_es accepts on <= and is monotone") {
    auto p = test_util::sphere_problem(3);
    Budget budget(3000);
    RngStream rng(8);
    RunRecord rec = run_es(p, config_for(Algorithm::es), budget, rng);
    require_monotone(rec);
}

TEST_CASE("run_es with zero strength never moves") {
    auto p = test_util::sphere_problem(2);
    OptimizerConfig cfg = config_for(Algorithm::es);
    cfg.es_mutation_strength = 0.0;
    Budget budget(200);
    RngStream rng(9);
    RngStream probe(9);
    Genome first = random_genome(p, probe);
    RunRecord rec = run_es(p, cfg, budget, rng);
    REQUIRE(rec.best_genome == first);
}

// --- PSO ----------------------------------------------------------------------

TEST_CASE("pso_update fixed point: at rest on its own best") {
    auto p = test_util::sphere_problem(1);
    Genome x = {5.0}, v = {0.0}, pb = {5.0}, gb = {5.0};
    std::vector<double> r1 = {0.7}, r2 = {0.3};
    pso_update(x, v, pb, gb, 0.9, 2.0, 2.0, r1, r2, p);
    REQUIRE(x == Genome{5.0});
    REQUIRE(v == Genome{0.0});
}

TEST_CASE("pso_update hand arithmetic and the velocity clamp") {
    // wide domain: v_max = 40, so v' = 0.9*1 + 2*1*2 + 2*1*4 = 12.9 survives
    auto wide = test_util::sphere_problem(1);
    Genome x = {0.0}, v = {1.0}, pb = {2.0}, gb = {4.0};
    std::vector<double> ones = {1.0};
    pso_update(x, v, pb, gb, 0.9, 2.0, 2.0, ones, ones, wide);
    REQUIRE(v[0] == Approx(12.9).epsilon(1e-12));
    REQUIRE(x[0] == Approx(12.9).epsilon(1e-12));

    // narrow domain [0, 10]: v_max = 2, the same update is clamped
    auto narrow = test_util::sphere_problem(1, 0.0, 0.0, 10.0);
    x = {0.0};
    v = {1.0};
    pso_update(x, v, pb, gb, 0.9, 2.0, 2.0, ones, ones, narrow);
    REQUIRE(v[0] == 2.0);
    REQUIRE(x[0] == 2.0);
}

TEST_CASE("pso velocity stays within the clamp under random updates") {
    auto p = test_util::sphere_problem(3);
    RngStream rng(10);
    Genome x = {0.0, 0.0, 0.0}, v = {0.0, 0.0, 0.0};
    Genome pb = {50.0, -50.0, 10.0}, gb = {-80.0, 80.0, 0.0};
    const double vmax = pso_velocity_max(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        pso_update(x, v, pb, gb, 0.9, 2.0, 2.0, rng, p);
        for (double vd : v) REQUIRE(std::abs(vd) <= vmax);
        REQUIRE(within_bounds(x, p));
    }
}

TEST_CASE("run_pso gbest is monotone and deterministic") {
    auto p = test_util::sphere_problem(2);
    Budget b1(2000), b2(2000);
    RngStream r1(12), r2(12);
    RunRecord a = run_pso(p, config_for(Algorithm::pso), b1, r1);
    RunRecord b = run_pso(p, config_for(Algorithm::pso), b2, r2);
    require_monotone(a);
    require_identical(a, b);
}

TEST_CASE("PSO sphere regression mean") {
    auto p = test_util::sphere_problem(2);
    double sum = 0.0;
    for (int seed = 0; seed < 30; ++seed) {
        Budget budget(2000);
        RngStream rng(seed);
        sum += run_pso(p, config_for(Algorithm::pso), budget, rng).best_fitness;
    }
    REQUIRE(sum / 30.0 == Approx(PSO_SPHERE2D_MEAN).epsilon(1e-12));
}

// --- cross-cutting -------------------------------------------------------------

TEST_CASE("every optimizer halts within budget with at least one history point") {
    auto p = test_util::sphere_problem(2);
    for (Algorithm algo :
         {Algorithm::rs, Algorithm::ga, Algorithm::de, Algorithm::es, Algorithm::pso}) {
        Budget budget(500);
        RngStream rng(13);
        RunRecord rec = run_optimizer(p, config_for(algo), budget, rng);
        REQUIRE(rec.evaluations_used <= 500);
        REQUIRE(rec.evaluations_used == budget.used());
        REQUIRE_FALSE(rec.history.empty());
        require_monotone(rec);
    }
}

TEST_CASE("seed determinism holds for all five optimizers") {
    auto p = test_util::sphere_problem(2);
    for (Algorithm algo :
         {Algorithm::rs, Algorithm::ga, Algorithm::de, Algorithm::es, Algorithm::pso}) {
        Budget b1(800), b2(800);
        RngStream r1(14), r2(14);
        RunRecord a = run_optimizer(p, config_for(algo), b1, r1);
        RunRecord b = run_optimizer(p, config_for(algo), b2, r2);
        require_identical(a, b);
    }
}

TEST_CASE("all optimizers only evaluate in-bounds genomes") {
    auto p = bounds_checked(test_util::sphere_problem(2));
    for (Algorithm algo :
         {Algorithm::rs, Algorithm::ga, Algorithm::de, Algorithm::es, Algorithm::pso}) {
        Budget budget(600);
        RngStream rng(15);
        REQUIRE_NOTHROW(run_optimizer(p, config_for(algo), budget, rng));
    }
}

TEST_CASE("invalid configurations are rejected") {
    OptimizerConfig cfg;
    cfg.de_crossover_rate = 1.5;
    REQUIRE_THROWS_AS(cfg.validate(2), std::invalid_argument);
    OptimizerConfig small_de = config_for(Algorithm::de, 3);
    REQUIRE_THROWS_AS(small_de.validate(2), std::invalid_argument);
    OptimizerConfig bad_f;
    bad_f.de_scale_factor = 0.0;
    REQUIRE_THROWS_AS(bad_f.validate(2), std::invalid_argument);
}

// DE on the 10-D sphere at the standard budget: the artifact's own plain-DE
// baseline, frozen from direct simulation.
TEST_CASE("run_de sphere 10-D regression mean") {
    auto p = test_util::sphere_problem(10);
    double sum = 0.0;
    for (int seed = 0; seed < 30; ++seed) {
        Budget budget(10000);
        RngStream rng(seed);
        sum += run_de(p, config_for(Algorithm::de), budget, rng).best_fitness;
    }
    REQUIRE(sum / 30.0 == Approx(DE_SPHERE10D_MEAN).epsilon(1e-12));
}
