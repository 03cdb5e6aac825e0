#pragma once

#include "bsauth/core_stats.hpp"
#include "bsauth/estimation.hpp"

namespace bsauth {

/// Threshold giving false-alarm probability `target_pfa` when the estimate
/// error is CN(0, est_variance): sqrt(-ln(target_pfa) * est_variance).
double design_threshold(double target_pfa, double est_variance);

/// Per-component standard deviation of a CN(0, est_variance) error, i.e. the
/// Rayleigh/Rice scale of the test statistic: sqrt(est_variance / 2).
double statistic_scale(double est_variance);

/// P(T > threshold | H0) = exp(-threshold^2 / est_variance).
double analytic_pfa(double threshold, double est_variance);

/// P(T < threshold | H1) = 1 - Q1(mu_mag / s, threshold / s), s = statistic_scale.
double analytic_pmd(double mu_mag, double threshold, double est_variance);

/// Missed-detection probability for an explicit Rice scale. analytic_pmd
/// calls this with statistic_scale(est_variance); validation uses it to show
/// that other scale conventions disagree with simulation.
double analytic_pmd_for_scale(double mu_mag, double threshold, double scale);

/// Enrolled fingerprint plus the Neyman-Pearson threshold derived from it.
class DetectorConfig {
public:
    /// Throws ParameterError unless 0 < target_pfa < 1 and est_variance > 0.
    DetectorConfig(Complex ground_truth, double est_variance, double target_pfa);

    Complex ground_truth() const noexcept { return ground_truth_; }
    double est_variance() const noexcept { return est_variance_; }
    double target_pfa() const noexcept { return target_pfa_; }
    double threshold() const noexcept { return threshold_; }

private:
    Complex ground_truth_;
    double est_variance_;
    double target_pfa_;
    double threshold_;
};

struct AuthDecision {
    double statistic = 0.0;  ///< |estimate - ground truth|
    bool accepted = false;   ///< true: legitimate tag declared present
    double threshold_used = 0.0;
    /// Estimate's own error variance differs from the configured one by more
    /// than 1e-9 relative. The configured value is still used.
    bool variance_mismatch = false;
};

/// Accepts iff statistic < threshold; a statistic equal to the threshold is rejected.
AuthDecision authenticate(const FingerprintEstimate& estimate, const DetectorConfig& config);

/// Decision rule alone, shared with the Monte Carlo engine.
inline bool rejects(double statistic, double threshold) noexcept
{
    return !(statistic < threshold);
}

}  // namespace bsauth
