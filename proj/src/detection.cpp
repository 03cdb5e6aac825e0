#include "bsauth/detection.hpp"

#include <cmath>

#include "bsauth/errors.hpp"

namespace bsauth {

namespace {

void require_variance(double v)
{
    if (!std::isfinite(v) || v <= 0.0) {
        throw ParameterError("estimation variance must be finite and > 0");
    }
}

}  // namespace

double design_threshold(double target_pfa, double est_variance)
{
    if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
        throw ParameterError("target false-alarm probability must lie in (0, 1)");
    }
    require_variance(est_variance);
    return std::sqrt(-std::log(target_pfa) * est_variance);
}

double statistic_scale(double est_variance)
{
    require_variance(est_variance);
    return std::sqrt(0.5 * est_variance);
}

double analytic_pfa(double threshold, double est_variance)
{
    return rayleigh_tail(threshold, statistic_scale(est_variance));
}

double analytic_pmd_for_scale(double mu_mag, double threshold, double scale)
{
    return rice_cdf(threshold, RiceParams(mu_mag, scale));
}

double analytic_pmd(double mu_mag, double threshold, double est_variance)
{
    return analytic_pmd_for_scale(mu_mag, threshold, statistic_scale(est_variance));
}

DetectorConfig::DetectorConfig(Complex ground_truth, double est_variance, double target_pfa)
    : ground_truth_(ground_truth),
      est_variance_(est_variance),
      target_pfa_(target_pfa),
      threshold_(design_threshold(target_pfa, est_variance))
{
    require_finite(ground_truth, "ground-truth fingerprint");
}

AuthDecision authenticate(const FingerprintEstimate& estimate, const DetectorConfig& config)
{
    AuthDecision d;
    d.statistic = std::abs(estimate.value() - config.ground_truth());
    d.threshold_used = config.threshold();
    d.accepted = !rejects(d.statistic, d.threshold_used);
    d.variance_mismatch = std::abs(estimate.error_variance() - config.est_variance()) >
                          1e-9 * config.est_variance();
    return d;
}

}  // namespace bsauth
