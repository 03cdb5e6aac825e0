#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace bsauth::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Physical-layer fingerprint authentication for backscatter tags"};
    app.require_subcommand(1);

    CommonOptions common;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string mu_list;
    ValidateOptions vopts;

    auto add_common = [&](CLI::App* sub, bool with_out, bool with_trials) {
        sub->add_option("--config", common.config_path, "INI config file")->required();
        if (with_out) sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option("--seed", seed, "override the config seed");
        if (with_trials) {
            sub->add_option("--trials", trials, "Monte Carlo trials (0 = analytic only)");
            sub->add_flag("--fast", common.fast, "reduced trial budget");
        }
    };

    CLI::App* roc = app.add_subcommand("roc", "analytic and empirical ROC for one scenario");
    add_common(roc, true, true);

    CLI::App* sweep = app.add_subcommand("sweep", "analytic ROC per attacker distance");
    add_common(sweep, true, true);
    sweep->add_option("--mu", mu_list, "comma-separated attacker distances |mu|")->required();

    CLI::App* auth = app.add_subcommand("auth", "authenticate one response");
    add_common(auth, false, false);
    auth->add_flag("--json-summary", common.json_summary, "print the decision as JSON");

    CLI::App* validate = app.add_subcommand("validate", "run the built-in oracle suite");
    validate->add_flag("--fast", vopts.fast, "smaller grids and trial budgets");
    validate->add_flag("--json-summary", vopts.json_summary, "print results as JSON");
    validate->add_option("--seed", vopts.seed, "base seed for the simulated checks");
    validate->add_flag("--inject-literal-scale", vopts.inject_literal_scale)->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        common.threads = threads_from_environment();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    vopts.threads = common.threads;

    auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
    for (CLI::App* sub : {roc, sweep, auth}) {
        if (!sub->parsed()) continue;
        if (given(sub, "--seed")) common.seed = seed;
        if (sub != auth && given(sub, "--trials")) common.trials = trials;
    }

    if (roc->parsed()) return cmd_roc(common, std::cout, std::cerr);
    if (sweep->parsed()) return cmd_sweep(common, mu_list, std::cout, std::cerr);
    if (auth->parsed()) return cmd_auth(common, std::cout, std::cerr);
    return cmd_validate(vopts, std::cout, std::cerr);
}
