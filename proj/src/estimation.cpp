#include "bsauth/estimation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsauth/errors.hpp"

namespace bsauth {

double estimation_error_variance(const SignalFrame& challenge, const TxParams& tx,
                                 const LinkNoiseParams& noise)
{
    tx.validate();
    noise.validate();
    return noise.aggregate() / (tx.eta * tx.eta * tx.p_r * challenge.energy());
}

double sinr_linear(const TxParams& tx, const LinkNoiseParams& noise)
{
    tx.validate();
    noise.validate();
    const double n = noise.aggregate();
    if (n == 0.0) return std::numeric_limits<double>::infinity();
    return tx.eta * tx.eta * tx.p_r / n;
}

FingerprintEstimate ls_estimate(const SignalFrame& challenge, const SignalFrame& response,
                                const TxParams& tx, const LinkNoiseParams& noise)
{
    if (challenge.size() != response.size()) {
        throw ShapeError("ls_estimate: challenge has " + std::to_string(challenge.size()) +
                         " symbols but response has " + std::to_string(response.size()));
    }
    tx.validate();
    noise.validate();
    const double energy = challenge.energy();
    if (energy <= 0.0) throw ParameterError("ls_estimate: challenge has zero energy");

    const double scale = tx.eta * std::sqrt(tx.p_r);
    Complex correlation{0.0, 0.0};
    for (std::size_t n = 0; n < challenge.size(); ++n) {
        correlation += std::conj(challenge[n]) * response[n];
    }
    // sum conj(s x) y / sum |s x|^2 = (sum conj(x) y) / (s ||x||^2)
    const Complex value = correlation / (scale * energy);
    return FingerprintEstimate(value, estimation_error_variance(challenge, tx, noise));
}

}  // namespace bsauth
