#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

namespace bsauth {

/// Channel gains, symbols, noise samples and test variables are all carried as this type.
using Complex = std::complex<double>;

/// Throws ParameterError if either component of `z` is NaN or infinite.
void require_finite(Complex z, std::string_view what);

/**
 * Seeded random source.
 *
 * The engine is std::mt19937_64, seeded through std::seed_seq from the four
 * 32-bit halves of (seed, stream). Both the engine and std::seed_seq are fully
 * specified by the C++ standard, so a given (seed, stream) pair produces the
 * same integer sequence on every conforming platform. Uniform doubles take the
 * top 53 bits of each 64-bit draw; normals use the Marsaglia polar method and
 * are always produced in pairs, so no hidden cached state exists.
 *
 * Parallel Monte Carlo shards use distinct `stream` indices under a common
 * seed. A handle is single-owner: never share one across threads.
 *
 * This scheme is part of the reproducibility contract of every CSV the CLI
 * writes. Changing it changes every seeded result.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    /// Independent handle for shard `stream` under the same seed.
    Rng substream(std::uint64_t stream) const { return Rng(seed_, stream); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Two independent N(0, 1) draws.
    std::pair<double, double> standard_normal_pair();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// Circularly symmetric complex normal CN(mean, variance): each component has
/// variance `variance / 2`. A zero variance returns `mean` exactly (one normal
/// pair is still consumed so stream alignment does not depend on parameters).
Complex sample_complex_normal(Rng& rng, Complex mean, double variance);

/// Modified Bessel function of the first kind, order 0. Valid up to x ~ 713
/// (beyond that the result overflows and std::overflow_error is thrown).
double bessel_i0(double x);

/// exp(-x) * I0(x), finite for all x >= 0.
double bessel_i0_scaled(double x);

/// Generalized Marcum Q-function of order 1 together with its complement,
/// each evaluated directly on the side where it is the small quantity.
struct MarcumPair {
    double q;           ///< Q1(a, b)
    double complement;  ///< 1 - Q1(a, b)
};

MarcumPair marcum_q1_pair(double a, double b);

/// Q1(a, b) = integral_b^inf x exp(-(x^2 + a^2) / 2) I0(a x) dx.
double marcum_q1(double a, double b);

/// 1 - Q1(a, b), accurate when Q1 is close to one.
double marcum_q1_complement(double a, double b);

/// P(R > delta) for R ~ Rayleigh(sigma), i.e. exp(-delta^2 / (2 sigma^2)).
double rayleigh_tail(double delta, double sigma);

/// Rice distribution of |Z| for Z ~ CN(m, 2 sigma^2) with |m| = nu.
class RiceParams {
public:
    RiceParams(double nu, double sigma);

    double nu() const noexcept { return nu_; }
    double sigma() const noexcept { return sigma_; }

private:
    double nu_;
    double sigma_;
};

/// P(R <= x) for R ~ Rice(nu, sigma), computed as 1 - Q1(nu/sigma, x/sigma).
double rice_cdf(double x, const RiceParams& params);

}  // namespace bsauth
