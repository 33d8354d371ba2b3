#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jamguard/run_config.hpp"
#include "jamguard/version.hpp"

// jamguard: link-level simulator for jamming detection with pseudo-random
// PRB blanking. Each subcommand runs one scenario and writes a CSV plus a
// run manifest into the output directory.

int main(int argc, char** argv) {
    CLI::App app{"OFDM jamming detection via pseudo-random subcarrier blanking"};
    app.set_version_flag("--version", jamguard::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    jamguard::cli::FlagOverrides flags;

    app.add_option("--config", config_path, "Config file (key = value lines)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", flags.seed, "Master seed (64-bit unsigned)");
    app.add_option("--trials", flags.trials, "Monte Carlo trials per point");
    app.add_option("--snr-j-db", flags.snr_j_db, "Jammer SNR grid in dB")->delimiter(',');
    app.add_option("--pfa", flags.pfa, "Target FA probability grid")->delimiter(',');
    app.add_option("--mp", flags.mp, "Blanked PRB count");
    app.add_option("--lp", flags.lp, "Jammed PRB counts")->delimiter(',');
    app.add_option("--channel", flags.channel, "Channel: awgn, rayleigh, or both");
    app.fallthrough();

    for (const char* name : {"roc", "se", "bler", "md-opt", "tradeoff-se", "tradeoff-bler",
                             "validate"}) {
        app.add_subcommand(name)->silent(false);
    }
    app.get_subcommand("roc")->description("MD probability vs FA probability");
    app.get_subcommand("se")->description("Spectral efficiency vs jammer SNR");
    app.get_subcommand("bler")->description("Slot BLER vs jammer SNR");
    app.get_subcommand("md-opt")->description("Best jammer MD probability and resource count");
    app.get_subcommand("tradeoff-se")->description("MD probability vs SE frontier");
    app.get_subcommand("tradeoff-bler")->description("MD probability vs BLER frontier");
    app.get_subcommand("validate")->description("Analytic vs Monte Carlo regression grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return jamguard::cli::kConfigError;
    }

    const auto* sub = app.get_subcommands().front();
    const auto kind = jamguard::sim::scenario_from_name(sub->get_name());
    if (!kind) {
        std::cerr << "error: unknown scenario '" << sub->get_name() << "'\n";
        return jamguard::cli::kConfigError;
    }

    jamguard::sim::ScenarioConfig cfg;
    try {
        cfg = jamguard::cli::parse_config(*kind, config_path, flags);
    } catch (const jamguard::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return jamguard::cli::kConfigError;
    }
    return jamguard::cli::run_command(cfg, out_dir);
}
