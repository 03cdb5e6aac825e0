#include <cmath>
#include <vector>

#include "bsauth/detection.hpp"
#include "bsauth/errors.hpp"
#include "bsauth/estimation.hpp"
#include "bsauth/experiments.hpp"
#include "doctest.h"

using namespace bsauth;

namespace {

ExperimentConfig base_config()
{
    ExperimentConfig c;
    c.sinr_db = 5.0;
    c.n_train = 1;
    c.mu_mag = 1.0;
    c.pfa_grid = uniform_pfa_grid(50);
    c.trials = 100'000;
    c.seed = 2020;
    return c;
}

}  // namespace

TEST_CASE("experiment config validation")
{
    ExperimentConfig c = base_config();
    CHECK_NOTHROW(c.validate());

    c.pfa_grid = {0.0, 0.5};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c.pfa_grid = {0.5, 1.0};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c.pfa_grid = {0.3, 0.2};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c.pfa_grid = {0.2, 0.2};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c.pfa_grid = {};
    CHECK_THROWS_AS(c.validate(), ParameterError);

    c = base_config();
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = base_config();
    c.n_train = 0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = base_config();
    c.mu_mag = -0.1;
    CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("uniform pfa grid")
{
    const auto g = uniform_pfa_grid(3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == 0.25);
    CHECK(g[1] == 0.5);
    CHECK(g[2] == 0.75);
    CHECK_THROWS_AS(uniform_pfa_grid(0), ParameterError);
}

TEST_CASE("canonical setup reduces back to the configured SINR and variance")
{
    for (double sinr_db : {-3.0, 0.0, 5.0, 12.5}) {
        for (std::size_t n : {1u, 8u, 33u}) {
            ExperimentConfig c = base_config();
            c.sinr_db = sinr_db;
            c.n_train = n;
            c.mu_mag = 0.75;
            const CanonicalSetup s = canonical_setup(c);
            const ScenarioReduction r = reduce_scenario(s.tx, s.noise, s.training);
            CHECK(r.sinr_db == doctest::Approx(sinr_db).epsilon(1e-12));
            CHECK(r.est_variance == doctest::Approx(est_variance(c)).epsilon(1e-12));
            CHECK(residual_distance(s.legit_link, s.malicious_link) == doctest::Approx(0.75).epsilon(1e-15));
        }
    }
}

TEST_CASE("reduce_scenario on raw parameters")
{
    const TxParams tx{2.0, 0.5};
    const LinkNoiseParams noise{0.1, 0.05, 0.05};
    const auto x = SignalFrame::unit_training(4);
    const ScenarioReduction r = reduce_scenario(tx, noise, x);
    CHECK(r.sinr_db == doctest::Approx(10.0 * std::log10(0.5 / 0.2)));
    CHECK(r.est_variance == doctest::Approx(estimation_error_variance(x, tx, noise)));
    CHECK_THROWS_AS(reduce_scenario(tx, {}, x), ParameterError);
}

TEST_CASE("roc_analytic: chance line at mu = 0, monotone along the grid")
{
    ExperimentConfig c = base_config();
    c.mu_mag = 0.0;
    for (const RocPoint& p : roc_analytic(c).points) {
        CHECK(std::abs(p.pd - p.pfa) <= 1e-12);
        CHECK(p.kind == RocKind::Analytic);
        CHECK(p.std_error == 0.0);
    }
    c.mu_mag = 0.8;
    const RocCurve curve = roc_analytic(c);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].pd >= curve.points[i - 1].pd);
        CHECK(curve.points[i].pfa > curve.points[i - 1].pfa);
    }
}

TEST_CASE("roc_analytic: higher SINR dominates pointwise")
{
    ExperimentConfig lo = base_config(), hi = base_config();
    lo.sinr_db = 0.0;
    hi.sinr_db = 5.0;
    const RocCurve a = roc_analytic(lo), b = roc_analytic(hi);
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(b.points[i].pd >= a.points[i].pd);
}

TEST_CASE("property: analytic pd >= pfa, equality only at mu = 0")
{
    Rng gen(404);
    for (int i = 0; i < 100; ++i) {
        ExperimentConfig c = base_config();
        c.sinr_db = -10.0 + 30.0 * gen.uniform();
        c.n_train = 1 + gen.next_u64() % 16;
        c.mu_mag = (i % 5 == 0) ? 0.0 : 3.0 * gen.uniform() + 1e-3;
        c.pfa_grid = uniform_pfa_grid(20);
        for (const RocPoint& p : roc_analytic(c).points) {
            if (c.mu_mag == 0.0) {
                CHECK(std::abs(p.pd - p.pfa) <= 1e-12);
            } else {
                CHECK(p.pd > p.pfa);
            }
        }
    }
}

TEST_CASE("roc_empirical: single trial gives degenerate pd")
{
    ExperimentConfig c = base_config();
    c.trials = 1;
    for (const RocPoint& p : roc_empirical(c).points) {
        CHECK((p.pd == 0.0 || p.pd == 1.0));
        CHECK(p.std_error == 0.0);
    }
}

TEST_CASE("roc_empirical: agrees with the analytic curve at 5 dB and 1e5 trials")
{
    const ExperimentConfig c = base_config();
    const MonteCarloCounts counts = run_monte_carlo(c, 0);
    const RocCurve emp = roc_from_counts(c, counts);
    const RocCurve ana = roc_analytic(c);
    REQUIRE(emp.points.size() == ana.points.size());
    CHECK(emp.config_digest == ana.config_digest);

    std::size_t within3 = 0;
    for (std::size_t i = 0; i < emp.points.size(); ++i) {
        const RocPoint& e = emp.points[i];
        const double se = std::sqrt(ana.points[i].pd * (1.0 - ana.points[i].pd) / 1e5);
        CAPTURE(e.pfa);
        CHECK(std::abs(e.pd - ana.points[i].pd) <= 4.0 * se);
        if (std::abs(e.pd - ana.points[i].pd) <= 3.0 * se) ++within3;
        CHECK(e.std_error == doctest::Approx(std::sqrt(e.pd * (1.0 - e.pd) / 1e5)));

        // H0 rejections track the target false-alarm rate.
        const double pfa_emp = double(counts.h0_rejections[i]) / 1e5;
        CHECK(std::abs(pfa_emp - e.pfa) <= 4.0 * std::sqrt(e.pfa * (1.0 - e.pfa) / 1e5));
    }
    CHECK(double(within3) >= 0.99 * double(emp.points.size()) - 1.0);
}

TEST_CASE("run_monte_carlo: reproducible and independent of thread count")
{
    ExperimentConfig c = base_config();
    c.trials = 3 * kTrialsPerBlock + 17;
    c.pfa_grid = {0.05, 0.2, 0.6};
    const MonteCarloCounts a = run_monte_carlo(c, 1);
    const MonteCarloCounts b = run_monte_carlo(c, 1);
    const MonteCarloCounts d = run_monte_carlo(c, 3);
    const MonteCarloCounts e = run_monte_carlo(c, 16);
    CHECK(a.h0_rejections == b.h0_rejections);
    CHECK(a.h1_rejections == b.h1_rejections);
    CHECK(a.h0_rejections == d.h0_rejections);
    CHECK(a.h1_rejections == d.h1_rejections);
    CHECK(a.h1_rejections == e.h1_rejections);

    c.seed += 1;
    CHECK(run_monte_carlo(c, 1).h1_rejections != a.h1_rejections);
}

TEST_CASE("sweep_attacker")
{
    ExperimentConfig c = base_config();
    const auto chance = sweep_attacker(c, {0.0});
    REQUIRE(chance.size() == 1);
    for (const RocPoint& p : chance[0].points) CHECK(std::abs(p.pd - p.pfa) <= 1e-12);

    const auto curves = sweep_attacker(c, {0.5, 1.0, 2.0});
    REQUIRE(curves.size() == 3);
    for (std::size_t i = 0; i < c.pfa_grid.size(); ++i) {
        CHECK(curves[1].points[i].pd > curves[0].points[i].pd);
        CHECK(curves[2].points[i].pd > curves[1].points[i].pd);
    }

    const auto dup = sweep_attacker(c, {1.0, 1.0});
    for (std::size_t i = 0; i < c.pfa_grid.size(); ++i) CHECK(dup[0].points[i].pd == dup[1].points[i].pd);

    CHECK_THROWS_AS(sweep_attacker(c, {}), ParameterError);
    CHECK_THROWS_AS(sweep_attacker(c, {-1.0}), ParameterError);
}

TEST_CASE("config digest")
{
    const ExperimentConfig a = base_config();
    ExperimentConfig b = a;
    CHECK(config_digest(a) == config_digest(b));
    CHECK(config_digest(a).size() == 16);
    b.seed += 1;
    CHECK(config_digest(a) != config_digest(b));
    b = a;
    b.pfa_grid.back() = 0.97;
    CHECK(config_digest(a) != config_digest(b));
}
