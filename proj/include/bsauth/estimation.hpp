#pragma once

#include "bsauth/core_stats.hpp"
#include "bsauth/signaling.hpp"

namespace bsauth {

/// Least-squares residual-channel estimate and the variance of its error.
/// Only ls_estimate creates these, so the variance always matches the inputs.
class FingerprintEstimate {
public:
    Complex value() const noexcept { return value_; }
    double error_variance() const noexcept { return error_variance_; }

private:
    friend FingerprintEstimate ls_estimate(const SignalFrame&, const SignalFrame&,
                                           const TxParams&, const LinkNoiseParams&);
    FingerprintEstimate(Complex value, double error_variance)
        : value_(value), error_variance_(error_variance)
    {
    }

    Complex value_;
    double error_variance_;
};

/// sigma_RT^2 / (eta^2 P_R ||x||^2).
double estimation_error_variance(const SignalFrame& challenge, const TxParams& tx,
                                 const LinkNoiseParams& noise);

/// eta^2 P_R / sigma_RT^2 (linear). Infinite when the link is noiseless.
double sinr_linear(const TxParams& tx, const LinkNoiseParams& noise);

/// Scalar LS projection sum(conj(xs[n]) y[n]) / sum(|xs[n]|^2) with
/// xs = eta sqrt(P_R) x. Throws ShapeError on a length mismatch.
FingerprintEstimate ls_estimate(const SignalFrame& challenge, const SignalFrame& response,
                                const TxParams& tx, const LinkNoiseParams& noise);

}  // namespace bsauth
