#include "bsauth/signaling.hpp"

#include <cmath>

#include "bsauth/errors.hpp"

namespace bsauth {

namespace {

void require_variance(double v, const char* what)
{
    if (!std::isfinite(v) || v < 0.0) {
        throw ParameterError(std::string(what) + " must be finite and >= 0");
    }
}

}  // namespace

SignalFrame::SignalFrame(std::vector<Complex> symbols) : symbols_(std::move(symbols))
{
    if (symbols_.empty()) throw ParameterError("signal frame must contain at least one symbol");
    for (const Complex& s : symbols_) require_finite(s, "signal frame symbol");
    if (energy() <= 0.0) throw ParameterError("challenge frame must have nonzero energy");
}

SignalFrame SignalFrame::unit_training(std::size_t n)
{
    return SignalFrame(std::vector<Complex>(n, Complex{1.0, 0.0}));
}

SignalFrame SignalFrame::response(std::vector<Complex> symbols)
{
    if (symbols.empty()) throw ParameterError("signal frame must contain at least one symbol");
    for (const Complex& s : symbols) require_finite(s, "signal frame symbol");
    return SignalFrame(Unchecked{}, std::move(symbols));
}

double SignalFrame::energy() const noexcept
{
    double e = 0.0;
    for (const Complex& s : symbols_) e += std::norm(s);
    return e;
}

void LinkNoiseParams::validate() const
{
    require_variance(sigma2_r, "sigma2_r");
    require_variance(sigma2_si_r, "sigma2_si_r");
    require_variance(sigma2_si_t, "sigma2_si_t");
}

void TxParams::validate() const
{
    if (!std::isfinite(p_r) || p_r <= 0.0) throw ParameterError("p_r must be finite and > 0");
    if (!std::isfinite(eta) || eta <= 0.0) throw ParameterError("eta must be finite and > 0");
}

LinkNoiseParams noise_from_devices(const DeviceModel& reader, const DeviceModel& tag,
                                   const LinkRealization& link, const TxParams& tx,
                                   double sigma2_r)
{
    tx.validate();
    LinkNoiseParams noise;
    noise.sigma2_r = sigma2_r;
    noise.sigma2_si_r = tag.si_power() * tx.eta * tx.eta * std::norm(link.h_rt());
    noise.sigma2_si_t = reader.si_power();
    noise.validate();
    return noise;
}

SignalFrame exchange(const SignalFrame& challenge, const LinkRealization& link,
                     const TxParams& tx, const LinkNoiseParams& noise, Rng& rng)
{
    tx.validate();
    noise.validate();
    const Complex gain = std::sqrt(tx.p_r) * tx.eta * link.h_res();
    const double variance = noise.aggregate();

    std::vector<Complex> out;
    out.reserve(challenge.size());
    for (const Complex& x : challenge.symbols()) {
        out.push_back(sample_complex_normal(rng, gain * x, variance));
    }
    return SignalFrame::response(std::move(out));
}

SignalFrame exchange_expanded(const SignalFrame& challenge, const LinkRealization& link,
                              const TxParams& tx, const LinkNoiseParams& noise, Rng& rng)
{
    tx.validate();
    noise.validate();
    const double backscatter_gain2 = tx.eta * tx.eta * std::norm(link.h_rt());
    if (noise.sigma2_si_r > 0.0 && backscatter_gain2 == 0.0) {
        throw ParameterError("tag self-interference cannot reach the reader through h_rt = 0");
    }
    const double p_si_t = noise.sigma2_si_r > 0.0 ? noise.sigma2_si_r / backscatter_gain2 : 0.0;
    const double p_si_r = noise.sigma2_si_t;
    const double sqrt_p_r = std::sqrt(tx.p_r);
    const Complex zero{0.0, 0.0};

    std::vector<Complex> out;
    out.reserve(challenge.size());
    for (const Complex& x : challenge.symbols()) {
        const Complex z_t = sample_complex_normal(rng, zero, 1.0);
        const Complex z_r = sample_complex_normal(rng, zero, 1.0);
        const Complex n_r = sample_complex_normal(rng, zero, noise.sigma2_r);

        const Complex y_tag = sqrt_p_r * x * link.h_tr() + std::sqrt(p_si_t) * z_t;
        out.push_back(tx.eta * link.h_rt() * y_tag + std::sqrt(p_si_r) * z_r + n_r);
    }
    return SignalFrame::response(std::move(out));
}

}  // namespace bsauth
