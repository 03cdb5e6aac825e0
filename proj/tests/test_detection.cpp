#include <cmath>
#include <vector>

#include "bsauth/detection.hpp"
#include "bsauth/errors.hpp"
#include "bsauth/oracles/oracles.hpp"
#include "doctest.h"

using namespace bsauth;

namespace {

// Rejection rate of T = |t| for t ~ CN(mu, v), sampled directly.
double sampled_rejection_rate(Complex mu, double v, double threshold, int n, std::uint64_t seed)
{
    Rng rng(seed);
    int rejected = 0;
    for (int i = 0; i < n; ++i) {
        if (rejects(std::abs(sample_complex_normal(rng, mu, v)), threshold)) ++rejected;
    }
    return static_cast<double>(rejected) / n;
}

const std::vector<double> kPfaGrid = {1e-4, 1e-3, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5};
const std::vector<double> kVarGrid = {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0};

}  // namespace

TEST_CASE("design_threshold: direct evaluations")
{
    CHECK(design_threshold(0.01, 1.0) == doctest::Approx(2.145966026289347).epsilon(1e-15));
    CHECK(design_threshold(1.0 - 1e-12, 1.0) < 1e-5);
    CHECK(design_threshold(1.0 - 1e-12, 1.0) > 0.0);
    CHECK_THROWS_AS(design_threshold(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(design_threshold(1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(design_threshold(0.1, 0.0), ParameterError);
}

TEST_CASE("design_threshold / analytic_pfa round trip")
{
    CHECK(analytic_pfa(design_threshold(0.1, 0.04), 0.04) == doctest::Approx(0.1).epsilon(1e-12));
    for (double p : kPfaGrid) {
        for (double v : kVarGrid) {
            CAPTURE(p);
            CAPTURE(v);
            CHECK(std::abs(analytic_pfa(design_threshold(p, v), v) / p - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("analytic_pfa: closed values")
{
    CHECK(analytic_pfa(0.0, 0.7) == 1.0);
    const double v = 0.37;
    CHECK(analytic_pfa(std::sqrt(std::log(2.0) * v), v) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(analytic_pfa(1.0, 0.0), ParameterError);
}

TEST_CASE("analytic_pfa: matches sampled H0 exceedance")
{
    std::uint64_t seed = 10;
    for (double v : {0.1, 1.0}) {
        for (double delta : {0.2, 0.5, 1.0}) {
            const double want = analytic_pfa(delta * std::sqrt(v), v);
            const double got = sampled_rejection_rate({}, v, delta * std::sqrt(v), 1'000'000, seed++);
            CHECK(std::abs(got - want) <= 4.0 * oracles::binomial_stderr(want, 1e6));
        }
    }
}

TEST_CASE("analytic_pmd: degenerate cases")
{
    for (double v : {0.05, 0.5, 2.0}) {
        for (double p : {0.01, 0.2, 0.6}) {
            const double delta = design_threshold(p, v);
            CHECK(analytic_pmd(0.0, delta, v) == doctest::Approx(1.0 - p).epsilon(1e-12));
        }
        CHECK(analytic_pmd(1.3, 0.0, v) == 0.0);
    }
}

TEST_CASE("analytic_pmd: matches sampled H1 acceptance at 5 dB, unit training energy")
{
    const double v = 1.0 / std::pow(10.0, 0.5);  // 0.3162...
    const double delta = design_threshold(0.1, v);
    const double pmd = analytic_pmd(1.0, delta, v);
    const double accept = 1.0 - sampled_rejection_rate({1.0, 0.0}, v, delta, 1'000'000, 5);
    CHECK(std::abs(accept - pmd) <= 4.0 * oracles::binomial_stderr(pmd, 1e6));

    // The variance-valued scale v / 2 is not the Rice scale of the statistic.
    const double literal = analytic_pmd_for_scale(1.0, delta, v / 2.0);
    CHECK(std::abs(accept - literal) > 20.0 * oracles::binomial_stderr(pmd, 1e6));
}

TEST_CASE("property: P_md strictly decreases with SINR and with attacker distance")
{
    for (double p : {0.01, 0.1, 0.5}) {
        for (double mu : {0.25, 1.0, 2.0}) {
            double prev = 2.0;
            for (double sinr_db : {-5.0, 0.0, 5.0, 10.0}) {
                const double v = 1.0 / std::pow(10.0, sinr_db / 10.0);
                const double pmd = analytic_pmd(mu, design_threshold(p, v), v);
                CHECK(pmd < prev);
                prev = pmd;
            }
        }
        for (double v : {0.1, 0.3162, 1.0}) {
            double prev = 2.0;
            for (double mu : {0.0, 0.25, 0.5, 1.0, 2.0}) {
                const double pmd = analytic_pmd(mu, design_threshold(p, v), v);
                CHECK(pmd < prev);
                prev = pmd;
            }
        }
    }
}

TEST_CASE("authenticate: zero distance accepts, tie rejects")
{
    const auto x = SignalFrame::unit_training(4);
    const auto zeros = SignalFrame::response(std::vector<Complex>(4, Complex{}));
    const TxParams tx{1.0, 1.0};
    const LinkNoiseParams noise{1.0, 0.0, 0.0};
    const auto est = ls_estimate(x, zeros, tx, noise);  // value exactly 0
    CHECK(est.value() == Complex{});

    const DetectorConfig exact({0.0, 0.0}, est.error_variance(), 0.1);
    const AuthDecision a = authenticate(est, exact);
    CHECK(a.statistic == 0.0);
    CHECK(a.accepted);
    CHECK_FALSE(a.variance_mismatch);

    const double delta = design_threshold(0.1, est.error_variance());
    const DetectorConfig tie({delta, 0.0}, est.error_variance(), 0.1);
    const AuthDecision b = authenticate(est, tie);
    CHECK(b.statistic == b.threshold_used);
    CHECK_FALSE(b.accepted);
}

TEST_CASE("authenticate: variance mismatch is flagged and the configured value used")
{
    const auto x = SignalFrame::unit_training(2);
    const auto est = ls_estimate(x, SignalFrame::response({0.0, 0.0}), {1.0, 1.0}, {1.0, 0.0, 0.0});
    const DetectorConfig cfg({0.0, 0.0}, 2.0, 0.05);
    const AuthDecision d = authenticate(est, cfg);
    CHECK(d.variance_mismatch);
    CHECK(d.threshold_used == design_threshold(0.05, 2.0));
}

TEST_CASE("detector config validation")
{
    CHECK_THROWS_AS(DetectorConfig({}, 1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(DetectorConfig({}, 1.0, 1.5), ParameterError);
    CHECK_THROWS_AS(DetectorConfig({}, -1.0, 0.1), ParameterError);
    CHECK_THROWS_AS(DetectorConfig({NAN, 0.0}, 1.0, 0.1), ParameterError);
    const DetectorConfig c({0.5, 0.5}, 0.2, 0.01);
    CHECK(c.threshold() == design_threshold(0.01, 0.2));
}

TEST_CASE("authenticate: L-tag end-to-end rejection rate at 5 dB equals the target")
{
    // P_R = 1, sigma_RT^2 = 1, eta^2 = SINR, single-symbol training.
    const double sinr = std::pow(10.0, 0.5);
    const TxParams tx{1.0, std::sqrt(sinr)};
    const LinkNoiseParams noise{1.0, 0.0, 0.0};
    const auto x = SignalFrame::unit_training(1);
    const LinkRealization link({0.8, 0.6}, {1.0, -0.5});
    const DetectorConfig cfg(link.h_res(), estimation_error_variance(x, tx, noise), 0.1);

    Rng rng(555);
    constexpr int trials = 100'000;
    int rejected = 0;
    for (int i = 0; i < trials; ++i) {
        const AuthDecision d = authenticate(ls_estimate(x, exchange(x, link, tx, noise, rng), tx, noise), cfg);
        if (!d.accepted) ++rejected;
    }
    CHECK(std::abs(double(rejected) / trials - 0.1) <= 4.0 * std::sqrt(0.1 * 0.9 / trials));
}
