#include "bsauth/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsauth/errors.hpp"

namespace bsauth {

namespace {

// Below this argument the power series for I0 is used; above it the
// asymptotic expansion, whose smallest term is ~exp(-2x).
constexpr double kBesselSeriesLimit = 20.0;

// log(DBL_MAX); exp(x) overflows past this.
constexpr double kExpOverflow = 709.782712893384;

void require_nonnegative_finite(double x, const char* what)
{
    if (!std::isfinite(x) || x < 0.0) {
        throw ParameterError(std::string(what) + " must be finite and >= 0, got " +
                             std::to_string(x));
    }
}

double bessel_i0_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// sqrt(2 pi x) e^{-x} I0(x) ~ sum_k ((2k-1)!!)^2 / (k! (8x)^k)
double bessel_i0_asymptotic_sum(double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (8.0 * k * x);
        if (next > term) break;  // series starts diverging
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

}  // namespace

void require_finite(Complex z, std::string_view what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ParameterError(std::string(what) + " must be finite");
    }
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream & 0xffffffffu),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::pair<double, double> Rng::standard_normal_pair()
{
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    return {u * f, v * f};
}

Complex sample_complex_normal(Rng& rng, Complex mean, double variance)
{
    require_finite(mean, "complex normal mean");
    if (!std::isfinite(variance) || variance < 0.0) {
        throw ParameterError("complex normal variance must be finite and >= 0");
    }
    const auto [g1, g2] = rng.standard_normal_pair();
    if (variance == 0.0) return mean;
    const double sd = std::sqrt(0.5 * variance);
    return {mean.real() + sd * g1, mean.imag() + sd * g2};
}

double bessel_i0_scaled(double x)
{
    require_nonnegative_finite(x, "bessel_i0 argument");
    if (x < kBesselSeriesLimit) return std::exp(-x) * bessel_i0_series(x);
    return bessel_i0_asymptotic_sum(x) / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_i0(double x)
{
    require_nonnegative_finite(x, "bessel_i0 argument");
    if (x < kBesselSeriesLimit) return bessel_i0_series(x);
    if (x > kExpOverflow) throw std::overflow_error("bessel_i0 overflows; use bessel_i0_scaled");
    const double r = std::exp(x) * bessel_i0_scaled(x);
    if (!std::isfinite(r)) throw std::overflow_error("bessel_i0 overflows; use bessel_i0_scaled");
    return r;
}

// With z = ab and rho = min(a,b)/max(a,b), the Neumann series
//   Q1(a,b)     = e^{-(a-b)^2/2} sum_{k>=0} rho^k e^{-z} I_k(z)   (a <= b)
//   1 - Q1(a,b) = e^{-(a-b)^2/2} sum_{k>=1} rho^k e^{-z} I_k(z)   (a >  b)
// have positive terms only. The ratios I_k/I_{k-1} come from the backward
// continued-fraction recurrence r_k = 1 / (2k/z + r_{k+1}), which is stable and
// cannot overflow, and e^{-z} I_0(z) anchors the chain. Terms decay at least
// like exp(-k^2 / 2z), so 10 sqrt(z) + 60 terms reach double precision.
MarcumPair marcum_q1_pair(double a, double b)
{
    require_nonnegative_finite(a, "marcum_q1 a");
    require_nonnegative_finite(b, "marcum_q1 b");

    if (b == 0.0) return {1.0, 0.0};
    if (a == 0.0) {
        const double h = 0.5 * b * b;
        return {std::exp(-h), -std::expm1(-h)};
    }

    const double z = a * b;
    const double rho = std::min(a, b) / std::max(a, b);
    const double gauss = std::exp(-0.5 * (a - b) * (a - b));
    const bool direct_q = a <= b;

    std::size_t terms = 60 + static_cast<std::size_t>(10.0 * std::sqrt(z));
    std::vector<double> ratio;
    for (;;) {
        const std::size_t start = 2 * terms + 20;
        ratio.assign(start + 1, 0.0);
        double r = 0.0;
        for (std::size_t k = start; k >= 1; --k) {
            r = 1.0 / (2.0 * static_cast<double>(k) / z + r);
            ratio[k] = r;
        }

        double term = bessel_i0_scaled(z);
        double sum = direct_q ? term : 0.0;
        bool converged = false;
        for (std::size_t k = 1; k <= terms; ++k) {
            term *= rho * ratio[k];
            sum += term;
            if (term <= 1e-18 * sum || term == 0.0) {
                converged = true;
                break;
            }
        }
        if (converged || terms > 1'000'000) {
            const double side = std::clamp(gauss * sum, 0.0, 1.0);
            if (direct_q) return {side, 1.0 - side};
            return {1.0 - side, side};
        }
        terms *= 2;
    }
}

double marcum_q1(double a, double b)
{
    return marcum_q1_pair(a, b).q;
}

double marcum_q1_complement(double a, double b)
{
    return marcum_q1_pair(a, b).complement;
}

double rayleigh_tail(double delta, double sigma)
{
    require_nonnegative_finite(delta, "rayleigh_tail delta");
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw ParameterError("rayleigh_tail sigma must be finite and > 0");
    }
    const double u = delta / sigma;
    return std::exp(-0.5 * u * u);
}

RiceParams::RiceParams(double nu, double sigma) : nu_(nu), sigma_(sigma)
{
    require_nonnegative_finite(nu, "Rice nu");
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw ParameterError("Rice sigma must be finite and > 0");
    }
}

double rice_cdf(double x, const RiceParams& params)
{
    require_nonnegative_finite(x, "rice_cdf x");
    return marcum_q1_complement(params.nu() / params.sigma(), x / params.sigma());
}

}  // namespace bsauth
