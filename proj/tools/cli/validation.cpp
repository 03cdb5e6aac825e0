#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bsauth/detection.hpp"
#include "bsauth/estimation.hpp"
#include "bsauth/experiments.hpp"
#include "bsauth/oracles/oracles.hpp"
#include "bsauth/signaling.hpp"
#include "bsauth/text.hpp"

namespace bsauth::cli {

namespace {

constexpr std::uint64_t kFullTrials = 100'000;
constexpr std::uint64_t kSampleCount = 100'000;
const std::vector<double> kPfaPoints = {0.01, 0.05, 0.1, 0.3};

std::string g(double v)
{
    return format_g17(v);
}

double rel_err(double got, double want)
{
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

CheckResult marcum_vs_quadrature(const ValidateOptions& opts)
{
    const double step = opts.fast ? 0.5 : 0.25;
    double worst = 0.0, wa = 0.0, wb = 0.0;
    for (double a = 0.0; a <= 10.0 + 1e-9; a += step) {
        for (double b = 0.0; b <= 10.0 + 1e-9; b += step) {
            const double e = rel_err(marcum_q1(a, b), oracles::marcum_q1_quadrature(a, b));
            if (e > worst) {
                worst = e;
                wa = a;
                wb = b;
            }
        }
    }
    return {"marcum_q1 vs defining-integral quadrature", worst <= 1e-10,
            "max rel err " + g(worst) + " at a=" + g(wa) + " b=" + g(wb), "<= 1e-10"};
}

CheckResult marcum_edges()
{
    double worst = 0.0;
    for (double x = 0.0; x <= 10.0 + 1e-9; x += 0.25) {
        worst = std::max(worst, rel_err(marcum_q1(0.0, x), std::exp(-0.5 * x * x)));
        worst = std::max(worst, rel_err(marcum_q1(x, 0.0), 1.0));
    }
    return {"marcum_q1 closed-form edges a=0, b=0", worst <= 1e-12, "max rel err " + g(worst), "<= 1e-12"};
}

CheckResult threshold_round_trip()
{
    double worst = 0.0;
    for (double p : {1e-4, 1e-3, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5}) {
        for (double v : {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0}) {
            worst = std::max(worst, rel_err(analytic_pfa(design_threshold(p, v), v), p));
        }
    }
    return {"threshold design / false-alarm round trip", worst <= 1e-12, "max rel err " + g(worst),
            "<= 1e-12"};
}

ExperimentConfig grid_config(double sinr_db, std::size_t n_train, double mu, std::uint64_t trials,
                             std::uint64_t seed)
{
    ExperimentConfig c;
    c.sinr_db = sinr_db;
    c.n_train = n_train;
    c.mu_mag = mu;
    c.pfa_grid = kPfaPoints;
    c.trials = trials;
    c.seed = seed;
    return c;
}

CheckResult false_alarm_grid(const ValidateOptions& opts, std::uint64_t trials)
{
    double worst_z = 0.0;
    std::string at;
    std::uint64_t seed = opts.seed;
    for (double sinr_db : {0.0, 5.0, 10.0}) {
        const ExperimentConfig c = grid_config(sinr_db, 8, 1.0, trials, seed++);
        const MonteCarloCounts counts = run_monte_carlo(c, opts.threads);
        for (std::size_t i = 0; i < c.pfa_grid.size(); ++i) {
            const double p = c.pfa_grid[i];
            const double emp = double(counts.h0_rejections[i]) / double(trials);
            const double z = std::abs(emp - p) / oracles::binomial_stderr(p, double(trials));
            if (z > worst_z) {
                worst_z = z;
                at = "sinr=" + g(sinr_db) + "dB pfa=" + g(p) + " empirical=" + g(emp);
            }
        }
    }
    return {"false-alarm rate vs target (" + std::to_string(trials) + " trials)", worst_z <= 4.0,
            "worst |z| " + g(worst_z) + " (" + at + ")", "|z| <= 4"};
}

struct PmdGrid {
    std::vector<double> mu;
    std::vector<double> v;
    std::vector<double> delta;
    std::vector<double> accept;  // empirical H1 acceptance
};

PmdGrid pmd_grid(const ValidateOptions& opts, std::uint64_t trials)
{
    PmdGrid grid;
    std::uint64_t seed = opts.seed + 100;
    for (double mu : {0.25, 0.5, 1.0, 2.0}) {
        const ExperimentConfig c = grid_config(5.0, 1, mu, trials, seed++);
        const MonteCarloCounts counts = run_monte_carlo(c, opts.threads);
        const double v = est_variance(c);
        for (std::size_t i = 0; i < c.pfa_grid.size(); ++i) {
            grid.mu.push_back(mu);
            grid.v.push_back(v);
            grid.delta.push_back(design_threshold(c.pfa_grid[i], v));
            grid.accept.push_back(1.0 - double(counts.h1_rejections[i]) / double(trials));
        }
    }
    return grid;
}

// Worst |z| of the empirical acceptance against analytic P_md computed with
// the given scale convention.
std::pair<double, std::string> pmd_worst_z(const PmdGrid& grid, std::uint64_t trials,
                                           const std::function<double(double)>& scale_of)
{
    double worst = 0.0;
    std::string at;
    for (std::size_t i = 0; i < grid.mu.size(); ++i) {
        const double pmd = analytic_pmd_for_scale(grid.mu[i], grid.delta[i], scale_of(grid.v[i]));
        const double se = std::max(oracles::binomial_stderr(pmd, double(trials)), 1e-300);
        const double z = std::abs(grid.accept[i] - pmd) / se;
        if (z > worst) {
            worst = z;
            at = "mu=" + g(grid.mu[i]) + " delta=" + g(grid.delta[i]) + " analytic=" + g(pmd) +
                 " empirical=" + g(grid.accept[i]);
        }
    }
    return {worst, at};
}

double standard_scale(double v)
{
    return std::sqrt(v / 2.0);
}

double literal_scale(double v)
{
    return v / 2.0;
}

CheckResult ls_statistics()
{
    const LinkRealization link({0.7, 0.1}, {0.9, -0.5});
    const TxParams tx{1.0, 1.2};
    const LinkNoiseParams noise{0.6, 0.3, 0.1};
    const auto x = SignalFrame::unit_training(4);
    const double v = estimation_error_variance(x, tx, noise);

    Rng rng(7001);
    Complex sum{};
    double sr2 = 0.0, si2 = 0.0;
    for (std::uint64_t i = 0; i < kSampleCount; ++i) {
        const Complex h = ls_estimate(x, exchange(x, link, tx, noise, rng), tx, noise).value();
        sum += h;
        sr2 += h.real() * h.real();
        si2 += h.imag() * h.imag();
    }
    const double n = double(kSampleCount);
    const Complex mean = sum / n;
    const double vr = sr2 / n - mean.real() * mean.real();
    const double vi = si2 / n - mean.imag() * mean.imag();
    const double se = std::sqrt(0.5 * v / n);
    const double z_re = std::abs(mean.real() - link.h_res().real()) / se;
    const double z_im = std::abs(mean.imag() - link.h_res().imag()) / se;
    const double dv = std::max(std::abs(vr / (0.5 * v) - 1.0), std::abs(vi / (0.5 * v) - 1.0));

    Rng quiet(1);
    const auto noiseless = ls_estimate(x, exchange(x, link, tx, {}, quiet), tx, {});
    const double recovery = std::abs(noiseless.value() - link.h_res()) / std::abs(link.h_res());

    const bool ok = z_re <= 4.0 && z_im <= 4.0 && dv <= 0.02 && recovery <= 1e-12;
    return {"LS estimate is CN(h_res, sigma_h^2)", ok,
            "bias |z| re " + g(z_re) + " im " + g(z_im) + ", variance rel dev " + g(dv) +
                ", noiseless rel err " + g(recovery),
            "|z| <= 4, variance within 2%, noiseless <= 1e-12"};
}

CheckResult consolidation_equivalence()
{
    const LinkRealization link({0.5, 0.5}, {1.2, -1.6});
    const TxParams tx{1.5, 0.8};
    const LinkNoiseParams noise{0.4, 0.7, 0.3};
    const auto x = SignalFrame::unit_training(kSampleCount);
    Rng r1(9100, 0), r2(9100, 1);
    const auto a = exchange(x, link, tx, noise, r1);
    const auto b = exchange_expanded(x, link, tx, noise, r2);

    auto moments = [](const SignalFrame& f) {
        Complex s{};
        for (const Complex& z : f.symbols()) s += z;
        const Complex m = s / double(f.size());
        double vr = 0.0, vi = 0.0;
        for (const Complex& z : f.symbols()) {
            vr += std::pow(z.real() - m.real(), 2);
            vi += std::pow(z.imag() - m.imag(), 2);
        }
        return std::tuple{m, vr / double(f.size() - 1), vi / double(f.size() - 1)};
    };
    const auto [ma, vra, via] = moments(a);
    const auto [mb, vrb, vib] = moments(b);
    const double n = double(kSampleCount);
    const double z = std::max(std::abs(ma.real() - mb.real()) / std::sqrt((vra + vrb) / n),
                              std::abs(ma.imag() - mb.imag()) / std::sqrt((via + vib) / n));
    const double dv = std::max(std::abs(vra / vrb - 1.0), std::abs(via / vib - 1.0));

    std::vector<double> abs_a, abs_b;
    abs_a.reserve(a.size());
    abs_b.reserve(b.size());
    for (const Complex& s : a.symbols()) abs_a.push_back(std::abs(s));
    for (const Complex& s : b.symbols()) abs_b.push_back(std::abs(s));
    const double ks = oracles::ks_statistic(abs_a, abs_b);
    const double crit = oracles::ks_critical_value(0.01, abs_a.size(), abs_b.size());

    return {"two-hop signaling matches consolidated model", z <= 4.0 && dv <= 0.02 && ks < crit,
            "mean |z| " + g(z) + ", variance rel dev " + g(dv) + ", KS " + g(ks),
            "|z| <= 4, variance within 2%, KS < " + g(crit)};
}

CheckResult sinr_ordering()
{
    ExperimentConfig c = grid_config(0.0, 1, 1.0, 1, 1);
    c.pfa_grid = uniform_pfa_grid(50);
    std::vector<RocCurve> curves;
    for (double s : {0.0, 5.0, 10.0, 15.0}) {
        c.sinr_db = s;
        curves.push_back(roc_analytic(c));
    }
    std::size_t violations = 0;
    for (std::size_t k = 1; k < curves.size(); ++k) {
        for (std::size_t i = 0; i < c.pfa_grid.size(); ++i) {
            if (!(curves[k].points[i].pd > curves[k - 1].points[i].pd)) ++violations;
        }
    }
    return {"P_d strictly increases with SINR (0/5/10/15 dB)", violations == 0,
            std::to_string(violations) + " violations", "0"};
}

CheckResult attacker_ordering()
{
    ExperimentConfig c = grid_config(5.0, 1, 0.0, 1, 1);
    c.pfa_grid = uniform_pfa_grid(50);
    const auto curves = sweep_attacker(c, {0.0, 0.5, 1.0, 2.0});
    double chance = 0.0;
    for (const RocPoint& p : curves[0].points) chance = std::max(chance, std::abs(p.pd - p.pfa));
    std::size_t violations = 0;
    for (std::size_t k = 2; k < curves.size(); ++k) {
        for (std::size_t i = 0; i < c.pfa_grid.size(); ++i) {
            if (!(curves[k].points[i].pd > curves[k - 1].points[i].pd)) ++violations;
        }
    }
    return {"P_d strictly increases with |mu|; |mu|=0 is the chance line",
            violations == 0 && chance <= 1e-12,
            std::to_string(violations) + " violations, chance-line dev " + g(chance),
            "0 violations, dev <= 1e-12"};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& opts)
{
    const std::uint64_t trials = opts.fast ? kFastTrials : kFullTrials;
    std::vector<CheckResult> results;
    results.push_back(marcum_vs_quadrature(opts));
    results.push_back(marcum_edges());
    results.push_back(threshold_round_trip());
    results.push_back(false_alarm_grid(opts, trials));

    const PmdGrid grid = pmd_grid(opts, trials);
    const auto [z, at] = pmd_worst_z(grid, trials, opts.inject_literal_scale ? literal_scale : standard_scale);
    results.push_back({std::string("missed-detection rate vs 1 - Q1") +
                           (opts.inject_literal_scale ? " [literal sigma^2/2 scale injected]" : ""),
                       z <= 4.0, "worst |z| " + g(z) + " (" + at + ")", "|z| <= 4"});
    const auto [zm, atm] = pmd_worst_z(grid, trials, literal_scale);
    results.push_back({"literal sigma^2/2 scale is rejected by simulation", zm > 4.0,
                       "worst |z| " + g(zm) + " (" + atm + ")", "|z| > 4 somewhere"});

    results.push_back(ls_statistics());
    results.push_back(consolidation_equivalence());
    results.push_back(sinr_ordering());
    results.push_back(attacker_ordering());
    return results;
}

}  // namespace bsauth::cli
