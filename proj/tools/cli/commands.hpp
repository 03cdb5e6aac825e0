#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bsauth/channel_model.hpp"
#include "bsauth/experiments.hpp"
#include "bsauth/signaling.hpp"
#include "config_file.hpp"

namespace bsauth::cli {

/// Process exit codes. Stable across versions.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitReject = 2 };

struct CommonOptions {
    std::filesystem::path config_path;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    bool fast = false;
    bool json_summary = false;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Trials used under --fast when --trials is not given.
inline constexpr std::uint64_t kFastTrials = 20'000;

/// Reads BACKSCATTER_AUTH_THREADS; unset means 0 (auto). Throws ConfigError on junk.
unsigned threads_from_environment();

// ---- config -> typed scenario ------------------------------------------------

/// Experiment config plus whether to run the Monte Carlo half.
struct RocJob {
    ExperimentConfig config;
    bool run_empirical = true;
};

/// Reads [experiment] (and optionally [signaling] raw link parameters instead
/// of sinr_db). With `for_sweep`, mu_mag is optional since --mu supplies it.
RocJob roc_job_from_config(const ConfigFile& file, const CommonOptions& opts, bool for_sweep);

enum class Responder { Legit, Malicious };

struct AuthScenario {
    DeviceModel reader;
    DeviceModel legit;
    std::optional<DeviceModel> malicious;
    RfChannelSpec forward_rf;
    RfChannelSpec reverse_rf;
    Responder responder;
    TxParams tx;
    double sigma2_r;
    std::optional<LinkNoiseParams> explicit_noise;  ///< set when device SI powers are not used
    std::size_t n_train;
    double target_pfa;
    std::uint64_t seed;
};

AuthScenario auth_scenario_from_config(const ConfigFile& file, const CommonOptions& opts);

struct AuthOutcome {
    Complex estimate;
    double statistic;
    double threshold;
    bool accepted;
    bool variance_mismatch;
};

/// One challenge-response episode: links from Rng(seed, 0), the legitimate
/// tag's residual enrolled as ground truth, noise from Rng(seed, 1).
AuthOutcome run_authentication(const AuthScenario& scenario);

// ---- CSV ------------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "pfa,pd,kind,stderr";

/// Header plus one line per point, 17 significant digits, '\n' endings.
std::string roc_csv(const RocCurve& curve);

/// "roc_mu_<mu with 6 decimals>.csv"
std::string sweep_file_name(double mu);

/// Parses "0.5,1.0,2.0". Throws ConfigError when empty, malformed or negative.
std::vector<double> parse_mu_list(const std::string& list);

// ---- commands ---------------------------------------------------------------------

int cmd_roc(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& opts, const std::string& mu_list, std::ostream& out,
              std::ostream& err);
int cmd_auth(const CommonOptions& opts, std::ostream& out, std::ostream& err);

struct ValidateOptions {
    bool fast = false;
    bool json_summary = false;
    bool inject_literal_scale = false;  ///< mutation: use sigma^2/2 as the Rice scale
    unsigned threads = 0;
    std::uint64_t seed = 20200715;
};

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace bsauth::cli
