#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bsauth/detection.hpp"
#include "bsauth/errors.hpp"
#include "bsauth/estimation.hpp"
#include "bsauth/text.hpp"
#include "json.hpp"
#include "validation.hpp"

namespace bsauth::cli {

namespace {

using Clock = std::chrono::steady_clock;

const std::set<std::string> kSignalingLinkKeys = {"p_r", "eta", "sigma2_r", "sigma2_si_r", "sigma2_si_t"};

double required_number(const ConfigFile& f, const std::string& section, const std::string& key)
{
    const auto v = f.number(section, key);
    if (!v) f.fail(section, key, "missing required key");
    return *v;
}

double positive(const ConfigFile& f, const std::string& section, const std::string& key, double fallback)
{
    const double v = f.number(section, key).value_or(fallback);
    if (!(v > 0.0)) f.fail(section, key, "must be > 0, got " + format_g17(v));
    return v;
}

double nonnegative(const ConfigFile& f, const std::string& section, const std::string& key, double fallback)
{
    const double v = f.number(section, key).value_or(fallback);
    if (v < 0.0) f.fail(section, key, "must be >= 0, got " + format_g17(v));
    return v;
}

TxParams tx_from(const ConfigFile& f)
{
    return TxParams{positive(f, "signaling", "p_r", 1.0), positive(f, "signaling", "eta", 1.0)};
}

LinkNoiseParams noise_from(const ConfigFile& f)
{
    return LinkNoiseParams{nonnegative(f, "signaling", "sigma2_r", 1.0),
                           nonnegative(f, "signaling", "sigma2_si_r", 0.0),
                           nonnegative(f, "signaling", "sigma2_si_t", 0.0)};
}

RfChannelSpec rf_from(const ConfigFile& f, const std::string& key)
{
    const auto text = f.text("device", key);
    if (!text) return FixedGain{};
    const std::string& s = *text;
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') {
        f.fail("device", key, "expected fixed(<complex gain>) or rayleigh(<variance>), got '" + s + "'");
    }
    const std::string kind = s.substr(0, open);
    const std::string arg = s.substr(open + 1, s.size() - open - 2);
    if (kind == "fixed") {
        const auto gain = parse_complex(arg);
        if (!gain || *gain == Complex{}) f.fail("device", key, "fixed gain must be a nonzero complex number");
        return FixedGain{*gain};
    }
    if (kind == "rayleigh") {
        const auto var = parse_double(arg);
        if (!var || *var <= 0.0) f.fail("device", key, "rayleigh variance must be > 0");
        return RayleighFading{*var};
    }
    f.fail("device", key, "unknown channel kind '" + kind + "'");
}

DeviceModel device_from(const ConfigFile& f, const std::string& prefix, DeviceRole role)
{
    const auto tx = f.complex("device", prefix + "_h_tx");
    const auto rx = f.complex("device", prefix + "_h_rx");
    if (!tx) f.fail("device", prefix + "_h_tx", "missing required key");
    if (!rx) f.fail("device", prefix + "_h_rx", "missing required key");
    if (*tx == Complex{}) f.fail("device", prefix + "_h_tx", "reciprocity parameter must be nonzero");
    if (*rx == Complex{}) f.fail("device", prefix + "_h_rx", "reciprocity parameter must be nonzero");
    return DeviceModel(*tx, *rx, nonnegative(f, "device", prefix + "_si_power", 0.0), role);
}

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        err << "error: cannot write " << path.string() << "\n";
        return false;
    }
    out << content;
    out.close();
    if (!out) {
        err << "error: failed writing " << path.string() << "\n";
        return false;
    }
    return true;
}

bool prepare_out_dir(const std::filesystem::path& dir, std::ostream& err)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        err << "error: cannot create output directory " << dir.string() << ": " << ec.message() << "\n";
        return false;
    }
    return true;
}

bool write_manifest(const CommonOptions& opts, const std::string& command, const std::string& digest,
                    const std::vector<std::string>& files, Clock::time_point started, std::ostream& err)
{
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config_path"] = opts.config_path.string();
    manifest["config_digest"] = digest;
    manifest["output_dir"] = opts.out_dir.string();
    manifest["emitted_files"] = files;
    manifest["wall_time_s"] = std::chrono::duration<double>(Clock::now() - started).count();
    return write_file(opts.out_dir / "manifest.json", manifest.dump(2) + "\n", err);
}

std::string format_complex(Complex z)
{
    std::string s = format_g17(z.real());
    s += z.imag() < 0.0 || std::signbit(z.imag()) ? "-" : "+";
    s += format_g17(std::abs(z.imag()));
    s += "i";
    return s;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitError;
}

}  // namespace

unsigned threads_from_environment()
{
    const char* raw = std::getenv("BACKSCATTER_AUTH_THREADS");
    if (!raw || !*raw) return 0;
    const auto v = parse_double(raw);
    if (!v || *v < 0.0 || *v != std::floor(*v) || *v > 4096.0) {
        throw ConfigError(std::string("BACKSCATTER_AUTH_THREADS must be a nonnegative integer, got '") +
                          raw + "'");
    }
    return static_cast<unsigned>(*v);
}

RocJob roc_job_from_config(const ConfigFile& f, const CommonOptions& opts, bool for_sweep)
{
    const std::string ctx = for_sweep ? "'sweep'" : "'roc'";
    f.require_only({{"experiment", {"sinr_db", "n_train", "mu_mag", "pfa_grid", "pfa_points", "trials", "seed"}},
                    {"signaling", kSignalingLinkKeys}},
                   ctx);
    if (!f.has_section("experiment")) {
        throw ConfigError(f.source() + ": missing [experiment] section");
    }

    RocJob job;
    ExperimentConfig& c = job.config;

    const std::uint64_t n_train = f.unsigned_integer("experiment", "n_train").value_or(1);
    if (n_train < 1) f.fail("experiment", "n_train", "must be >= 1");
    c.n_train = static_cast<std::size_t>(n_train);

    const bool has_sinr = f.has("experiment", "sinr_db");
    if (has_sinr && f.has_section("signaling")) {
        f.fail("experiment", "sinr_db", "give either sinr_db or a [signaling] section, not both");
    }
    if (has_sinr) {
        c.sinr_db = required_number(f, "experiment", "sinr_db");
    } else if (f.has_section("signaling")) {
        const TxParams tx = tx_from(f);
        const LinkNoiseParams noise = noise_from(f);
        if (noise.aggregate() <= 0.0) {
            throw ConfigError(f.source() + ": [signaling] total noise variance must be > 0");
        }
        c.sinr_db = reduce_scenario(tx, noise, SignalFrame::unit_training(c.n_train)).sinr_db;
    } else {
        f.fail("experiment", "sinr_db", "missing required key (or give a [signaling] section)");
    }

    if (f.has("experiment", "mu_mag")) {
        c.mu_mag = nonnegative(f, "experiment", "mu_mag", 0.0);
    } else if (!for_sweep) {
        f.fail("experiment", "mu_mag", "missing required key");
    }

    const bool has_grid = f.has("experiment", "pfa_grid");
    const bool has_points = f.has("experiment", "pfa_points");
    if (has_grid == has_points) {
        f.fail("experiment", has_grid ? "pfa_points" : "pfa_grid",
               "give exactly one of pfa_grid or pfa_points");
    }
    if (has_grid) {
        c.pfa_grid = *f.number_list("experiment", "pfa_grid");
        for (std::size_t i = 0; i < c.pfa_grid.size(); ++i) {
            if (!(c.pfa_grid[i] > 0.0 && c.pfa_grid[i] < 1.0)) {
                f.fail("experiment", "pfa_grid", "entry " + std::to_string(i) + " = " +
                                                     format_g17(c.pfa_grid[i]) + " is outside (0, 1)");
            }
            if (i > 0 && !(c.pfa_grid[i] > c.pfa_grid[i - 1])) {
                f.fail("experiment", "pfa_grid", "entries must be strictly increasing (entry " +
                                                     std::to_string(i) + ")");
            }
        }
    } else {
        const std::uint64_t points = *f.unsigned_integer("experiment", "pfa_points");
        if (points < 1 || points > 100'000) f.fail("experiment", "pfa_points", "must be in [1, 100000]");
        c.pfa_grid = uniform_pfa_grid(static_cast<std::size_t>(points));
    }

    std::uint64_t trials = f.unsigned_integer("experiment", "trials").value_or(100'000);
    if (opts.fast) trials = std::min(trials, kFastTrials);
    if (opts.trials) trials = *opts.trials;
    job.run_empirical = trials > 0;
    c.trials = std::max<std::uint64_t>(trials, 1);

    c.seed = opts.seed.value_or(f.unsigned_integer("experiment", "seed").value_or(1));
    c.validate();
    return job;
}

AuthScenario auth_scenario_from_config(const ConfigFile& f, const CommonOptions& opts)
{
    f.require_only(
        {{"device",
          {"reader_h_tx", "reader_h_rx", "reader_si_power", "legit_h_tx", "legit_h_rx", "legit_si_power",
           "malicious_h_tx", "malicious_h_rx", "malicious_si_power", "forward_rf", "reverse_rf",
           "responder"}},
         {"signaling", {"p_r", "eta", "sigma2_r", "sigma2_si_r", "sigma2_si_t", "n_train", "seed"}},
         {"detector", {"target_pfa"}}},
        "'auth'");

    const auto responder_text = f.text("device", "responder");
    if (!responder_text) f.fail("device", "responder", "missing required key (legit or malicious)");
    Responder responder = Responder::Legit;
    if (*responder_text == "malicious") {
        responder = Responder::Malicious;
    } else if (*responder_text != "legit") {
        f.fail("device", "responder", "expected 'legit' or 'malicious', got '" + *responder_text + "'");
    }

    const bool malicious_given = f.has("device", "malicious_h_tx") || f.has("device", "malicious_h_rx");
    if (responder == Responder::Malicious && !malicious_given) {
        f.fail("device", "malicious_h_tx", "missing required key (responder is malicious)");
    }

    const bool device_si = f.has("device", "reader_si_power") || f.has("device", "legit_si_power") ||
                           f.has("device", "malicious_si_power");
    const bool explicit_si = f.has("signaling", "sigma2_si_r") || f.has("signaling", "sigma2_si_t");
    if (device_si && explicit_si) {
        f.fail("signaling", f.has("signaling", "sigma2_si_r") ? "sigma2_si_r" : "sigma2_si_t",
               "self-interference is given both per device and per link; use one");
    }

    const std::uint64_t n_train = f.unsigned_integer("signaling", "n_train").value_or(8);
    if (n_train < 1) f.fail("signaling", "n_train", "must be >= 1");

    const auto pfa = f.number("detector", "target_pfa");
    if (!pfa) f.fail("detector", "target_pfa", "missing required key");
    if (!(*pfa > 0.0 && *pfa < 1.0)) f.fail("detector", "target_pfa", "must lie in (0, 1)");

    std::optional<DeviceModel> malicious;
    if (malicious_given) malicious = device_from(f, "malicious", DeviceRole::MaliciousTag);

    std::optional<LinkNoiseParams> explicit_noise;
    if (!device_si) explicit_noise = noise_from(f);

    return AuthScenario{device_from(f, "reader", DeviceRole::Reader),
                        device_from(f, "legit", DeviceRole::LegitTag),
                        malicious,
                        rf_from(f, "forward_rf"),
                        rf_from(f, "reverse_rf"),
                        responder,
                        tx_from(f),
                        nonnegative(f, "signaling", "sigma2_r", 1.0),
                        explicit_noise,
                        static_cast<std::size_t>(n_train),
                        *pfa,
                        opts.seed.value_or(f.unsigned_integer("signaling", "seed").value_or(1))};
}

AuthOutcome run_authentication(const AuthScenario& s)
{
    Rng link_rng(s.seed, 0);
    const LinkRealization legit_link = make_link(s.reader, s.legit, s.forward_rf, s.reverse_rf, link_rng);
    std::optional<LinkRealization> malicious_link;
    if (s.malicious) malicious_link = make_link(s.reader, *s.malicious, s.forward_rf, s.reverse_rf, link_rng);

    auto noise_for = [&](const DeviceModel& tag, const LinkRealization& link) {
        if (s.explicit_noise) return *s.explicit_noise;
        return noise_from_devices(s.reader, tag, link, s.tx, s.sigma2_r);
    };

    const bool legit = s.responder == Responder::Legit;
    const LinkRealization& link = legit ? legit_link : *malicious_link;
    const LinkNoiseParams noise = legit ? noise_for(s.legit, legit_link) : noise_for(*s.malicious, link);
    const SignalFrame training = SignalFrame::unit_training(s.n_train);

    // The reader enrolled the legitimate tag offline and knows its link noise.
    const double enrolled_variance = estimation_error_variance(training, s.tx, noise_for(s.legit, legit_link));
    if (!(enrolled_variance > 0.0)) throw ParameterError("noiseless link: detection threshold is undefined");
    const DetectorConfig detector(legit_link.h_res(), enrolled_variance, s.target_pfa);

    Rng noise_rng(s.seed, 1);
    const SignalFrame response = exchange(training, link, s.tx, noise, noise_rng);
    const FingerprintEstimate estimate = ls_estimate(training, response, s.tx, noise);
    const AuthDecision d = authenticate(estimate, detector);
    return {estimate.value(), d.statistic, d.threshold_used, d.accepted, d.variance_mismatch};
}

std::string roc_csv(const RocCurve& curve)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const RocPoint& p : curve.points) {
        out += format_g17(p.pfa);
        out += ',';
        out += format_g17(p.pd);
        out += ',';
        out += to_string(p.kind);
        out += ',';
        out += format_g17(p.std_error);
        out += '\n';
    }
    return out;
}

std::string sweep_file_name(double mu)
{
    return "roc_mu_" + format_fixed(mu, 6) + ".csv";
}

std::vector<double> parse_mu_list(const std::string& list)
{
    std::vector<double> out;
    std::string_view rest = list;
    if (rest.find_first_not_of(" \t") == std::string_view::npos) {
        throw ConfigError("--mu: expected a comma-separated list of attacker distances, got nothing");
    }
    for (;;) {
        const std::size_t comma = rest.find(',');
        const std::string item(rest.substr(0, comma));
        const auto v = parse_double(item);
        if (!v || *v < 0.0) throw ConfigError("--mu: '" + item + "' is not a nonnegative number");
        out.push_back(*v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

int cmd_roc(const CommonOptions& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto started = Clock::now();
        const ConfigFile file = ConfigFile::load(opts.config_path);
        const RocJob job = roc_job_from_config(file, opts, false);
        if (!prepare_out_dir(opts.out_dir, err)) return int(kExitError);

        std::vector<std::string> files;
        const RocCurve analytic = roc_analytic(job.config);
        if (!write_file(opts.out_dir / "roc_analytic.csv", roc_csv(analytic), err)) return int(kExitError);
        files.push_back("roc_analytic.csv");

        if (job.run_empirical) {
            const RocCurve empirical = roc_empirical(job.config, opts.threads);
            if (!write_file(opts.out_dir / "roc_empirical.csv", roc_csv(empirical), err)) return int(kExitError);
            files.push_back("roc_empirical.csv");
        }
        if (!write_manifest(opts, "roc", analytic.config_digest, files, started, err)) return int(kExitError);

        out << "roc: " << job.config.pfa_grid.size() << " points, sinr " << format_g17(job.config.sinr_db)
            << " dB, |mu| " << format_g17(job.config.mu_mag);
        if (job.run_empirical) out << ", " << job.config.trials << " trials";
        out << " -> " << opts.out_dir.string() << "\n";
        return int(kExitOk);
    });
}

int cmd_sweep(const CommonOptions& opts, const std::string& mu_list, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto started = Clock::now();
        const std::vector<double> mus = parse_mu_list(mu_list);
        const ConfigFile file = ConfigFile::load(opts.config_path);
        const RocJob job = roc_job_from_config(file, opts, true);
        if (!prepare_out_dir(opts.out_dir, err)) return int(kExitError);

        const std::vector<RocCurve> curves = sweep_attacker(job.config, mus);
        std::vector<std::string> files;
        for (std::size_t i = 0; i < mus.size(); ++i) {
            const std::string name = sweep_file_name(mus[i]);
            if (std::find(files.begin(), files.end(), name) != files.end()) continue;
            if (!write_file(opts.out_dir / name, roc_csv(curves[i]), err)) return int(kExitError);
            files.push_back(name);
        }
        if (!write_manifest(opts, "sweep", config_digest(job.config), files, started, err)) {
            return int(kExitError);
        }
        out << "sweep: " << files.size() << " curves at sinr " << format_g17(job.config.sinr_db)
            << " dB -> " << opts.out_dir.string() << "\n";
        return int(kExitOk);
    });
}

int cmd_auth(const CommonOptions& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ConfigFile file = ConfigFile::load(opts.config_path);
        const AuthScenario scenario = auth_scenario_from_config(file, opts);
        const AuthOutcome r = run_authentication(scenario);
        if (r.variance_mismatch) {
            err << "warning: responder link noise differs from the enrolled link; "
                   "threshold uses the enrolled variance\n";
        }
        if (opts.json_summary) {
            nlohmann::json j;
            j["estimate"] = {r.estimate.real(), r.estimate.imag()};
            j["statistic"] = r.statistic;
            j["threshold"] = r.threshold;
            j["decision"] = r.accepted ? "ACCEPT" : "REJECT";
            out << j.dump() << "\n";
        } else {
            out << "estimate  " << format_complex(r.estimate) << "\n"
                << "statistic " << format_g17(r.statistic) << "\n"
                << "threshold " << format_g17(r.threshold) << "\n"
                << (r.accepted ? "ACCEPT" : "REJECT") << "\n";
        }
        return int(r.accepted ? kExitOk : kExitReject);
    });
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto started = Clock::now();
        const std::vector<CheckResult> results = run_validation(opts);
        const double elapsed = std::chrono::duration<double>(Clock::now() - started).count();
        const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });

        if (opts.json_summary) {
            nlohmann::json j;
            j["passed"] = all;
            j["wall_time_s"] = elapsed;
            for (const CheckResult& r : results) {
                j["checks"].push_back(
                    {{"name", r.name}, {"passed", r.passed}, {"observed", r.observed}, {"expected", r.expected}});
            }
            out << j.dump(2) << "\n";
        } else {
            for (const CheckResult& r : results) {
                out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "\n";
                out << "      observed: " << r.observed << "\n";
                if (!r.passed) out << "      expected: " << r.expected << "\n";
            }
            out << (all ? "all checks passed" : "validation FAILED") << " (" << std::fixed
                << std::setprecision(1) << elapsed << " s)\n";
        }
        for (const CheckResult& r : results) {
            if (!r.passed) err << "failed check: " << r.name << ": " << r.observed << "; expected " << r.expected << "\n";
        }
        return int(all ? kExitOk : kExitError);
    });
}

}  // namespace bsauth::cli
