#include "bsauth/channel_model.hpp"

#include <cmath>

#include "bsauth/errors.hpp"

namespace bsauth {

namespace {

Complex draw_rf(const RfChannelSpec& spec, Rng& rng)
{
    if (const auto* fixed = std::get_if<FixedGain>(&spec)) return fixed->gain;
    const auto& fading = std::get<RayleighFading>(spec);
    return sample_complex_normal(rng, Complex{0.0, 0.0}, fading.variance);
}

}  // namespace

DeviceModel::DeviceModel(Complex h_tx, Complex h_rx, double si_power, DeviceRole role)
    : h_tx_(h_tx), h_rx_(h_rx), si_power_(si_power), role_(role)
{
    require_finite(h_tx, "device h_tx");
    require_finite(h_rx, "device h_rx");
    if (h_tx == Complex{} || h_rx == Complex{}) {
        throw ParameterError("device reciprocity parameters must be nonzero");
    }
    if (!std::isfinite(si_power) || si_power < 0.0) {
        throw ParameterError("device si_power must be finite and >= 0");
    }
}

void validate(const RfChannelSpec& spec)
{
    if (const auto* fixed = std::get_if<FixedGain>(&spec)) {
        require_finite(fixed->gain, "fixed RF gain");
        if (fixed->gain == Complex{}) throw ParameterError("fixed RF gain must be nonzero");
        return;
    }
    const double v = std::get<RayleighFading>(spec).variance;
    if (!std::isfinite(v) || v <= 0.0) {
        throw ParameterError("Rayleigh fading variance must be finite and > 0");
    }
}

LinkRealization::LinkRealization(Complex h_tr, Complex h_rt)
    : h_tr_(h_tr), h_rt_(h_rt), h_res_(h_tr * h_rt)
{
    require_finite(h_tr, "h_tr");
    require_finite(h_rt, "h_rt");
}

LinkRealization make_link(const DeviceModel& reader, const DeviceModel& tag,
                          const RfChannelSpec& forward_rf, const RfChannelSpec& reverse_rf,
                          Rng& rng)
{
    if (reader.role() != DeviceRole::Reader) {
        throw ConfigurationError("make_link: first device must be a reader");
    }
    if (tag.role() == DeviceRole::Reader) {
        throw ConfigurationError("make_link: second device must be a tag");
    }
    validate(forward_rf);
    validate(reverse_rf);

    const Complex rf_fwd = draw_rf(forward_rf, rng);
    const Complex rf_rev = draw_rf(reverse_rf, rng);
    return LinkRealization(reader.h_tx() * rf_fwd * tag.h_rx(),
                           tag.h_tx() * rf_rev * reader.h_rx());
}

double residual_distance(const LinkRealization& a, const LinkRealization& b)
{
    return std::abs(a.h_res() - b.h_res());
}

}  // namespace bsauth
