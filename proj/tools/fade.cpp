// Batch driver for the fractional advection-dispersion solver suite.
//
//   fade forward|invert|lcurve|diagnose --config <path> [--seed <u64>] [--out <dir>]
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure.
// FADE_LOG = quiet|info|debug controls stderr verbosity.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>

#include "fade/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fractional advection-dispersion equation solver suite"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;

    std::function<void(const fade::cli::RunConfig&)> action;
    for (const auto& [name, desc, fn] :
         {std::tuple{"forward", "solve the direct problem and write forward.csv",
                     &fade::cli::cmd_forward},
          std::tuple{"invert", "reconstruct the source from a final observation",
                     &fade::cli::cmd_invert},
          std::tuple{"lcurve", "sweep the regularization parameter grid", &fade::cli::cmd_lcurve},
          std::tuple{"diagnose", "SVD spectrum and perturbation-decay diagnostics",
                     &fade::cli::cmd_diagnose}}) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--seed", seed_override, "override the config seed");
        sub->add_option("--out", out_override, "override the config output directory");
        sub->callback([fn, &action] { action = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        fade::cli::RunConfig cfg = fade::cli::parse_config_file(config_path);
        if (seed_override) cfg.noise.seed = *seed_override;
        if (out_override) cfg.out_dir = *out_override;
        action(cfg);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
}
