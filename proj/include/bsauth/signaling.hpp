#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bsauth/channel_model.hpp"
#include "bsauth/core_stats.hpp"

namespace bsauth {

/// A nonempty block of finite symbols. Challenge frames must also carry
/// energy; responses may not (see `response`).
class SignalFrame {
public:
    /// Challenge constructor: rejects empty, non-finite or all-zero input.
    explicit SignalFrame(std::vector<Complex> symbols);

    /// All-ones training sequence of length n.
    static SignalFrame unit_training(std::size_t n);

    /// Received block; may legitimately be all zeros.
    static SignalFrame response(std::vector<Complex> symbols);

    std::span<const Complex> symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    const Complex& operator[](std::size_t i) const { return symbols_[i]; }

    /// Sum of |x[n]|^2.
    double energy() const noexcept;

private:
    struct Unchecked {};
    SignalFrame(Unchecked, std::vector<Complex> symbols) : symbols_(std::move(symbols)) {}

    std::vector<Complex> symbols_;
};

/// Noise and self-interference variances at the reader output. Labels follow
/// the consolidated model: `sigma2_si_r` is the variance of the tag
/// self-interference term after it has been amplified and backscattered,
/// `sigma2_si_t` the variance of the reader's own leakage term.
struct LinkNoiseParams {
    double sigma2_r = 0.0;
    double sigma2_si_r = 0.0;
    double sigma2_si_t = 0.0;

    /// Throws ParameterError on any negative or non-finite variance.
    void validate() const;

    /// Variance of the consolidated noise n_RT.
    double aggregate() const noexcept { return sigma2_r + sigma2_si_r + sigma2_si_t; }
};

struct TxParams {
    double p_r = 1.0;  ///< reader transmit power
    double eta = 1.0;  ///< tag amplification factor

    void validate() const;
};

/// Maps device self-interference powers onto reader-side variances for a given
/// link: the tag term is scaled by eta^2 |h_rt|^2 on its way back.
LinkNoiseParams noise_from_devices(const DeviceModel& reader, const DeviceModel& tag,
                                   const LinkRealization& link, const TxParams& tx,
                                   double sigma2_r);

/// Consolidated response: y[n] = sqrt(P_R) eta h_res x[n] + n_RT[n], with
/// n_RT i.i.d. CN(0, noise.aggregate()). Consumes one complex draw per symbol.
SignalFrame exchange(const SignalFrame& challenge, const LinkRealization& link,
                     const TxParams& tx, const LinkNoiseParams& noise, Rng& rng);

/// Two-hop form of the same exchange. The tag receives
///   y_T[n] = sqrt(P_R) x[n] h_tr + sqrt(P_SI,T) z_T[n]
/// (no thermal noise at the tag) and the reader receives
///   y_R[n] = eta h_rt y_T[n] + sqrt(P_SI,R) z_R[n] + n_R[n].
/// P_SI,T and P_SI,R are chosen so the two interference terms reach the reader
/// with variances sigma2_si_r and sigma2_si_t. Consumes three complex draws per
/// symbol in the order z_T, z_R, n_R.
SignalFrame exchange_expanded(const SignalFrame& challenge, const LinkRealization& link,
                              const TxParams& tx, const LinkNoiseParams& noise, Rng& rng);

}  // namespace bsauth
