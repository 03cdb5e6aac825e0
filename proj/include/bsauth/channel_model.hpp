#pragma once

#include <variant>

#include "bsauth/core_stats.hpp"

namespace bsauth {

enum class DeviceRole { Reader, LegitTag, MaliciousTag };

/**
 * A transceiver described by its reciprocity parameters: the complex gains of
 * its Tx and Rx RF chains. Differing Tx/Rx gains are what make the end-to-end
 * link non-reciprocal and the residual channel device-specific.
 */
class DeviceModel {
public:
    /// Throws ParameterError for a zero or non-finite gain, or negative si_power.
    DeviceModel(Complex h_tx, Complex h_rx, double si_power, DeviceRole role);

    Complex h_tx() const noexcept { return h_tx_; }
    Complex h_rx() const noexcept { return h_rx_; }
    /// Self-interference power seen by this device's receiver.
    double si_power() const noexcept { return si_power_; }
    DeviceRole role() const noexcept { return role_; }

private:
    Complex h_tx_;
    Complex h_rx_;
    double si_power_;
    DeviceRole role_;
};

/// Deterministic propagation gain. Must be nonzero.
struct FixedGain {
    Complex gain{1.0, 0.0};
};

/// Propagation gain drawn per realization from CN(0, variance).
struct RayleighFading {
    double variance = 1.0;
};

/// Statistics of the over-the-air part of one link direction.
using RfChannelSpec = std::variant<FixedGain, RayleighFading>;

/// Throws ParameterError for FixedGain(0) or a non-positive fading variance.
void validate(const RfChannelSpec& spec);

/// One draw of both directional channels and their product, the residual
/// channel used as the tag fingerprint.
class LinkRealization {
public:
    LinkRealization(Complex h_tr, Complex h_rt);

    /// Reader -> tag: reader Tx gain * forward RF * tag Rx gain.
    Complex h_tr() const noexcept { return h_tr_; }
    /// Tag -> reader: tag Tx gain * reverse RF * reader Rx gain.
    Complex h_rt() const noexcept { return h_rt_; }
    Complex h_res() const noexcept { return h_res_; }

    bool operator==(const LinkRealization&) const = default;

private:
    Complex h_tr_;
    Complex h_rt_;
    Complex h_res_;
};

/// Composes the directional channels between `reader` and `tag`. FixedGain
/// specs ignore `rng`; each RayleighFading spec consumes one complex draw,
/// forward first.
LinkRealization make_link(const DeviceModel& reader, const DeviceModel& tag,
                          const RfChannelSpec& forward_rf, const RfChannelSpec& reverse_rf,
                          Rng& rng);

/// |h_res(a) - h_res(b)|.
double residual_distance(const LinkRealization& a, const LinkRealization& b);

}  // namespace bsauth
