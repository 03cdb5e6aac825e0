#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bsauth/channel_model.hpp"
#include "bsauth/signaling.hpp"

namespace bsauth {

/// Detector performance depends only on the estimation variance and on the
/// attacker's fingerprint distance, so experiments are parameterized by
/// (SINR, training length, |mu|) rather than raw powers and device gains.
struct ExperimentConfig {
    double sinr_db = 5.0;
    std::size_t n_train = 1;
    double mu_mag = 1.0;
    std::vector<double> pfa_grid;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 1;

    /// Throws ParameterError naming the offending field.
    void validate() const;
};

/// `count` evenly spaced false-alarm targets k / (count + 1), k = 1..count.
std::vector<double> uniform_pfa_grid(std::size_t count);

/// 1 / (SINR_linear * n_train) for an all-ones training frame.
double est_variance(const ExperimentConfig& config);

/// Raw link parameters reduced to what the detector sees.
struct ScenarioReduction {
    double sinr_db;
    double est_variance;
};

ScenarioReduction reduce_scenario(const TxParams& tx, const LinkNoiseParams& noise,
                                  const SignalFrame& training);

/// The canonical physical setup realizing a config: P_R = 1, unit thermal
/// noise, no self-interference, eta = sqrt(SINR), all-ones training, reader
/// and legitimate tag with unit gains (residual 1) and a malicious tag whose
/// Tx gain is 1 + mu_mag (residual 1 + mu_mag). RF channels are Fixed(1).
struct CanonicalSetup {
    TxParams tx;
    LinkNoiseParams noise;
    SignalFrame training;
    LinkRealization legit_link;
    LinkRealization malicious_link;
};

CanonicalSetup canonical_setup(const ExperimentConfig& config);

enum class RocKind { Analytic, Empirical };

const char* to_string(RocKind kind) noexcept;

struct RocPoint {
    double pfa = 0.0;
    double pd = 0.0;
    RocKind kind = RocKind::Analytic;
    double std_error = 0.0;  ///< binomial standard error; zero for analytic points
};

struct RocCurve {
    std::vector<RocPoint> points;  ///< ascending pfa
    std::string config_digest;
};

/// Stable 16-hex-digit FNV-1a digest of every config field.
std::string config_digest(const ExperimentConfig& config);

/// Rejection counts per grid point from the full simulated pipeline
/// (exchange, LS estimate, threshold test) under each hypothesis.
struct MonteCarloCounts {
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> h0_rejections;  ///< legitimate tag rejected
    std::vector<std::uint64_t> h1_rejections;  ///< malicious tag rejected
};

/// Trials run in fixed blocks of `kTrialsPerBlock`; block b under hypothesis h
/// draws from Rng(seed, 2 b + h). Counts therefore do not depend on `threads`
/// (0 = hardware concurrency).
inline constexpr std::uint64_t kTrialsPerBlock = 4096;

MonteCarloCounts run_monte_carlo(const ExperimentConfig& config, unsigned threads = 1);

/// Thread count for `requested` (0 = hardware concurrency, at least 1).
unsigned resolve_threads(unsigned requested) noexcept;

RocCurve roc_analytic(const ExperimentConfig& config);

RocCurve roc_empirical(const ExperimentConfig& config, unsigned threads = 1);

/// Empirical curve from counts already computed for `config`.
RocCurve roc_from_counts(const ExperimentConfig& config, const MonteCarloCounts& counts);

/// One analytic curve per attacker distance, SINR fixed at base.sinr_db.
std::vector<RocCurve> sweep_attacker(const ExperimentConfig& base,
                                     const std::vector<double>& mu_grid);

}  // namespace bsauth
