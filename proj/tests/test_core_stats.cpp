#include <cmath>
#include <numbers>
#include <vector>

#include "bsauth/core_stats.hpp"
#include "bsauth/errors.hpp"
#include "bsauth/oracles/oracles.hpp"
#include "doctest.h"

using namespace bsauth;

namespace {

double rel_err(double got, double want)
{
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("complex normal: zero variance returns the mean exactly")
{
    Rng rng(7);
    CHECK(sample_complex_normal(rng, {1.0, 2.0}, 0.0) == Complex(1.0, 2.0));
}

TEST_CASE("complex normal: negative variance is a parameter error")
{
    Rng rng(7);
    CHECK_THROWS_AS(sample_complex_normal(rng, {}, -1e-3), ParameterError);
    CHECK_THROWS_AS(sample_complex_normal(rng, {NAN, 0.0}, 1.0), ParameterError);
}

TEST_CASE("complex normal: moments over 1e6 draws, per-component variance is half")
{
    Rng rng(42);
    constexpr int n = 1'000'000;
    double sr = 0, si = 0, sr2 = 0, si2 = 0;
    for (int i = 0; i < n; ++i) {
        const Complex z = sample_complex_normal(rng, {0.0, 0.0}, 2.0);
        sr += z.real();
        si += z.imag();
        sr2 += z.real() * z.real();
        si2 += z.imag() * z.imag();
    }
    const double mr = sr / n, mi = si / n;
    CHECK(std::abs(mr) < 0.005);
    CHECK(std::abs(mi) < 0.005);
    CHECK(rel_err(sr2 / n - mr * mr, 1.0) < 0.01);
    CHECK(rel_err(si2 / n - mi * mi, 1.0) < 0.01);
}

TEST_CASE("rng: identical seed and stream give identical streams; streams differ")
{
    Rng a(123, 4), b(123, 4), c(123, 5), d(124, 4);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        differs_c |= va != c.next_u64();
        differs_d |= va != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
    CHECK(Rng(9).substream(3).next_u64() == Rng(9, 3).next_u64());
}

TEST_CASE("rng: uniform lies in [0, 1)")
{
    Rng rng(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("bessel_i0: closed values and integral-representation oracle")
{
    CHECK(bessel_i0(0.0) == 1.0);
    // mpmath, 40 digits
    CHECK(rel_err(bessel_i0(1.0), 1.266065877752008335598) < 1e-14);
    CHECK(rel_err(bessel_i0(1.0), oracles::bessel_i0_scaled_quadrature(1.0) * std::exp(1.0)) < 1e-12);
    CHECK(rel_err(bessel_i0_scaled(100.0), 0.03994437929909668264756) < 1e-13);
    CHECK(rel_err(bessel_i0_scaled(100.0), oracles::bessel_i0_scaled_quadrature(100.0)) < 1e-10);
}

TEST_CASE("bessel_i0: agrees with an independent implementation across both branches")
{
    for (double x = 0.0; x <= 700.0; x += (x < 40.0 ? 0.125 : 7.0)) {
        const double want = std::cyl_bessel_i(0.0, x);
        CAPTURE(x);
        CHECK(rel_err(bessel_i0(x), want) < 1e-12);
        CHECK(rel_err(bessel_i0_scaled(x), want * std::exp(-x)) < 1e-12);
    }
    // Scaled form keeps working where I0 itself overflows.
    CHECK(std::isfinite(bessel_i0_scaled(5000.0)));
    CHECK(rel_err(bessel_i0_scaled(5000.0), 1.0 / std::sqrt(2.0 * std::numbers::pi * 5000.0)) < 1e-4);
    CHECK_THROWS_AS(bessel_i0(800.0), std::overflow_error);
}

TEST_CASE("bessel_i0: rejects negative and non-finite input")
{
    CHECK_THROWS_AS(bessel_i0(-1.0), ParameterError);
    CHECK_THROWS_AS(bessel_i0(INFINITY), ParameterError);
    CHECK_THROWS_AS(bessel_i0_scaled(NAN), ParameterError);
}

TEST_CASE("marcum_q1: edge closed forms")
{
    for (double a : {0.0, 0.3, 1.0, 7.5, 40.0}) CHECK(marcum_q1(a, 0.0) == 1.0);
    CHECK(rel_err(marcum_q1(0.0, 1.0), 0.60653065971263342360) < 1e-15);
    for (double b : {0.1, 1.0, 3.0, 10.0}) {
        CHECK(rel_err(marcum_q1(0.0, b), std::exp(-0.5 * b * b)) < 1e-15);
    }
}

TEST_CASE("marcum_q1: frozen high-precision values")
{
    // Defining integral evaluated with mpmath at 40 digits.
    CHECK(rel_err(marcum_q1(1.0, 1.0), 0.73287980379682021825) < 1e-13);
    CHECK(rel_err(marcum_q1(2.0, 3.0), 0.21436208816264945697) < 1e-12);
    CHECK(rel_err(marcum_q1(3.0, 2.0), 0.88672075440239225704) < 1e-12);
    CHECK(rel_err(marcum_q1(0.5, 8.0), 1.3341802471414525878e-13) < 1e-10);
    CHECK(rel_err(marcum_q1_complement(10.0, 1.0), 3.4136489462303752158e-20) < 1e-10);
    CHECK(rel_err(marcum_q1(30.0, 35.0), 3.104786814354188913e-7) < 1e-10);
    CHECK(rel_err(marcum_q1_complement(50.0, 45.0), 1.0 - 0.99999972860797302336) < 1e-8);
}

TEST_CASE("marcum_q1: a == b identity Q1(a,a) = (1 + e^{-a^2} I0(a^2)) / 2")
{
    for (double a : {0.01, 0.5, 1.0, 3.0, 12.0, 40.0}) {
        const double want = 0.5 * (1.0 + oracles::bessel_i0_scaled_quadrature(a * a));
        CAPTURE(a);
        CHECK(rel_err(marcum_q1(a, a), want) < 1e-12);
    }
}

TEST_CASE("marcum_q1: matches the quadrature oracle on a coarse grid")
{
    for (double a = 0.0; a <= 10.0; a += 0.5) {
        for (double b = 0.0; b <= 10.0; b += 0.5) {
            CAPTURE(a);
            CAPTURE(b);
            const double want = oracles::marcum_q1_quadrature(a, b);
            CHECK(rel_err(marcum_q1(a, b), want) <= 1e-10);
            CHECK(std::abs(marcum_q1(a, b) + marcum_q1_complement(a, b) - 1.0) < 1e-15);
        }
    }
}

TEST_CASE("marcum_q1: monotone in both arguments")
{
    for (double a = 0.0; a <= 10.0; a += 0.5) {
        for (double b = 0.0; b < 10.0; b += 0.5) {
            CAPTURE(a);
            CAPTURE(b);
            CHECK(marcum_q1(a, b + 0.5) <= marcum_q1(a, b));
            CHECK(marcum_q1(b, a) <= marcum_q1(b + 0.5, a));
        }
    }
}

TEST_CASE("marcum_q1: rejects negative input")
{
    CHECK_THROWS_AS(marcum_q1(-0.1, 1.0), ParameterError);
    CHECK_THROWS_AS(marcum_q1(1.0, -0.1), ParameterError);
    CHECK_THROWS_AS(marcum_q1(1.0, NAN), ParameterError);
}

TEST_CASE("rayleigh_tail")
{
    CHECK(rayleigh_tail(0.0, 0.7) == 1.0);
    const double sigma = 1.3;
    CHECK(rayleigh_tail(sigma * std::sqrt(2.0 * std::log(2.0)), sigma) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(rayleigh_tail(2.146, std::sqrt(0.5)) - 0.01) < 1e-3);
    CHECK(rayleigh_tail(2.145966026289347, std::sqrt(0.5)) == doctest::Approx(0.01).epsilon(1e-13));
    CHECK_THROWS_AS(rayleigh_tail(1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(rayleigh_tail(1.0, -1.0), ParameterError);
}

TEST_CASE("rice_cdf: support, Rayleigh reduction and monotonicity")
{
    CHECK(rice_cdf(0.0, RiceParams(1.0, 0.5)) == 0.0);
    for (double x = 0.0; x <= 5.0; x += 0.125) {
        const RiceParams rayleigh(0.0, 0.8);
        CHECK(std::abs(rice_cdf(x, rayleigh) - (1.0 - rayleigh_tail(x, 0.8))) < 1e-12);
        CHECK(rice_cdf(x + 0.125, RiceParams(1.2, 0.6)) >= rice_cdf(x, RiceParams(1.2, 0.6)));
    }
    CHECK(rice_cdf(50.0, RiceParams(1.0, 0.5)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(RiceParams(-1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(RiceParams(1.0, 0.0), ParameterError);
}

TEST_CASE("rice_cdf: matches the empirical CDF of |CN(1, 2 * 0.5^2)|")
{
    Rng rng(2024);
    constexpr int n = 1'000'000;
    int below = 0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(sample_complex_normal(rng, {1.0, 0.0}, 2.0 * 0.25)) <= 1.5) ++below;
    }
    const double p = rice_cdf(1.5, RiceParams(1.0, 0.5));
    CHECK(std::abs(static_cast<double>(below) / n - p) <= 3.0 * oracles::binomial_stderr(p, n));
}

TEST_CASE("property: exceedance of |CN(mu, v)| over delta matches Q1(|mu|/s, delta/s)")
{
    struct Case {
        Complex mean;
        double variance;
        double delta;
    };
    const Case cases[] = {{{0.6, -0.8}, 0.5, 1.2}, {{0.0, 0.0}, 1.0, 0.9}, {{2.0, 1.0}, 0.3, 2.4}};
    std::uint64_t stream = 0;
    for (const Case& c : cases) {
        Rng rng(99, stream++);
        constexpr int n = 1'000'000;
        int above = 0;
        for (int i = 0; i < n; ++i) {
            if (std::abs(sample_complex_normal(rng, c.mean, c.variance)) > c.delta) ++above;
        }
        const double s = std::sqrt(c.variance / 2.0);
        const double p = marcum_q1(std::abs(c.mean) / s, c.delta / s);
        CHECK(std::abs(static_cast<double>(above) / n - p) <= 4.0 * oracles::binomial_stderr(p, n));
    }
}
