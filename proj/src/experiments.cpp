#include "bsauth/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "bsauth/detection.hpp"
#include "bsauth/errors.hpp"
#include "bsauth/estimation.hpp"
#include "bsauth/text.hpp"

namespace bsauth {

namespace {

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::vector<double> thresholds_for(const ExperimentConfig& config)
{
    const double v = est_variance(config);
    std::vector<double> out;
    out.reserve(config.pfa_grid.size());
    for (double p : config.pfa_grid) out.push_back(design_threshold(p, v));
    return out;
}

// Runs trials [first, first + count) of one hypothesis and adds the rejection
// count for every threshold into `rejections`.
void run_block(const CanonicalSetup& setup, const LinkRealization& link, Complex ground_truth,
               const std::vector<double>& thresholds, Rng rng, std::uint64_t count,
               std::vector<std::uint64_t>& rejections)
{
    for (std::uint64_t t = 0; t < count; ++t) {
        const SignalFrame response = exchange(setup.training, link, setup.tx, setup.noise, rng);
        const FingerprintEstimate est = ls_estimate(setup.training, response, setup.tx, setup.noise);
        const double statistic = std::abs(est.value() - ground_truth);
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            if (rejects(statistic, thresholds[i])) ++rejections[i];
        }
    }
}

void fnv1a(std::uint64_t& h, const std::string& s)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
}

}  // namespace

void ExperimentConfig::validate() const
{
    if (!std::isfinite(sinr_db)) throw ParameterError("sinr_db must be finite");
    if (n_train < 1) throw ParameterError("n_train must be >= 1");
    if (!std::isfinite(mu_mag) || mu_mag < 0.0) throw ParameterError("mu_mag must be finite and >= 0");
    if (trials < 1) throw ParameterError("trials must be >= 1");
    if (pfa_grid.empty()) throw ParameterError("pfa_grid must not be empty");
    for (std::size_t i = 0; i < pfa_grid.size(); ++i) {
        const double p = pfa_grid[i];
        if (!(p > 0.0 && p < 1.0)) {
            throw ParameterError("pfa_grid[" + std::to_string(i) + "] = " + format_g17(p) +
                                 " is outside (0, 1)");
        }
        if (i > 0 && !(p > pfa_grid[i - 1])) {
            throw ParameterError("pfa_grid must be strictly increasing (entry " +
                                 std::to_string(i) + ")");
        }
    }
}

std::vector<double> uniform_pfa_grid(std::size_t count)
{
    if (count == 0) throw ParameterError("pfa grid needs at least one point");
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = static_cast<double>(k + 1) / static_cast<double>(count + 1);
    }
    return grid;
}

double est_variance(const ExperimentConfig& config)
{
    return 1.0 / (db_to_linear(config.sinr_db) * static_cast<double>(config.n_train));
}

ScenarioReduction reduce_scenario(const TxParams& tx, const LinkNoiseParams& noise,
                                  const SignalFrame& training)
{
    const double sinr = sinr_linear(tx, noise);
    if (!std::isfinite(sinr)) throw ParameterError("noiseless link has no finite SINR");
    return {10.0 * std::log10(sinr), estimation_error_variance(training, tx, noise)};
}

CanonicalSetup canonical_setup(const ExperimentConfig& config)
{
    config.validate();
    TxParams tx{1.0, std::sqrt(db_to_linear(config.sinr_db))};
    LinkNoiseParams noise{1.0, 0.0, 0.0};

    const DeviceModel reader({1.0, 0.0}, {1.0, 0.0}, 0.0, DeviceRole::Reader);
    const DeviceModel legit({1.0, 0.0}, {1.0, 0.0}, 0.0, DeviceRole::LegitTag);
    const DeviceModel malicious({1.0 + config.mu_mag, 0.0}, {1.0, 0.0}, 0.0,
                                DeviceRole::MaliciousTag);
    const RfChannelSpec unit = FixedGain{};
    Rng unused(0);
    return CanonicalSetup{tx, noise, SignalFrame::unit_training(config.n_train),
                          make_link(reader, legit, unit, unit, unused),
                          make_link(reader, malicious, unit, unit, unused)};
}

const char* to_string(RocKind kind) noexcept
{
    return kind == RocKind::Analytic ? "analytic" : "empirical";
}

std::string config_digest(const ExperimentConfig& config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    fnv1a(h, "sinr_db=" + format_g17(config.sinr_db));
    fnv1a(h, ";n_train=" + std::to_string(config.n_train));
    fnv1a(h, ";mu_mag=" + format_g17(config.mu_mag));
    fnv1a(h, ";pfa_grid=");
    for (double p : config.pfa_grid) fnv1a(h, format_g17(p) + ",");
    fnv1a(h, ";trials=" + std::to_string(config.trials));
    fnv1a(h, ";seed=" + std::to_string(config.seed));

    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
        h >>= 4;
    }
    return out;
}

unsigned resolve_threads(unsigned requested) noexcept
{
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

MonteCarloCounts run_monte_carlo(const ExperimentConfig& config, unsigned threads)
{
    const CanonicalSetup setup = canonical_setup(config);
    const std::vector<double> thresholds = thresholds_for(config);
    const Complex ground_truth = setup.legit_link.h_res();
    const std::size_t points = thresholds.size();

    const std::uint64_t blocks = (config.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    const std::uint64_t jobs = 2 * blocks;  // job j: block j / 2, hypothesis j % 2
    std::vector<std::vector<std::uint64_t>> per_job(jobs, std::vector<std::uint64_t>(points, 0));

    auto worker = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t j = first; j < jobs; j += stride) {
            const std::uint64_t block = j / 2;
            const bool malicious = (j % 2) == 1;
            const std::uint64_t count =
                std::min(kTrialsPerBlock, config.trials - block * kTrialsPerBlock);
            run_block(setup, malicious ? setup.malicious_link : setup.legit_link, ground_truth,
                      thresholds, Rng(config.seed, j), count, per_job[j]);
        }
    };

    const unsigned n = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(threads), jobs));
    if (n <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker, w, n);
    }

    MonteCarloCounts counts;
    counts.trials = config.trials;
    counts.h0_rejections.assign(points, 0);
    counts.h1_rejections.assign(points, 0);
    for (std::uint64_t j = 0; j < jobs; ++j) {
        auto& target = (j % 2 == 0) ? counts.h0_rejections : counts.h1_rejections;
        for (std::size_t i = 0; i < points; ++i) target[i] += per_job[j][i];
    }
    return counts;
}

RocCurve roc_analytic(const ExperimentConfig& config)
{
    config.validate();
    const double v = est_variance(config);
    RocCurve curve;
    curve.config_digest = config_digest(config);
    curve.points.reserve(config.pfa_grid.size());
    for (double p : config.pfa_grid) {
        const double delta = design_threshold(p, v);
        curve.points.push_back({p, 1.0 - analytic_pmd(config.mu_mag, delta, v), RocKind::Analytic, 0.0});
    }
    return curve;
}

RocCurve roc_from_counts(const ExperimentConfig& config, const MonteCarloCounts& counts)
{
    RocCurve curve;
    curve.config_digest = config_digest(config);
    curve.points.reserve(config.pfa_grid.size());
    const double n = static_cast<double>(counts.trials);
    for (std::size_t i = 0; i < config.pfa_grid.size(); ++i) {
        const double pd = static_cast<double>(counts.h1_rejections[i]) / n;
        curve.points.push_back(
            {config.pfa_grid[i], pd, RocKind::Empirical, std::sqrt(pd * (1.0 - pd) / n)});
    }
    return curve;
}

RocCurve roc_empirical(const ExperimentConfig& config, unsigned threads)
{
    return roc_from_counts(config, run_monte_carlo(config, threads));
}

std::vector<RocCurve> sweep_attacker(const ExperimentConfig& base, const std::vector<double>& mu_grid)
{
    if (mu_grid.empty()) throw ParameterError("attacker sweep needs at least one mu value");
    std::vector<RocCurve> curves;
    curves.reserve(mu_grid.size());
    for (double mu : mu_grid) {
        ExperimentConfig c = base;
        c.mu_mag = mu;
        curves.push_back(roc_analytic(c));
    }
    return curves;
}

}  // namespace bsauth
