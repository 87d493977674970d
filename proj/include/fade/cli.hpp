#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fade/forward.hpp"
#include "fade/inversion.hpp"
#include "fade/params.hpp"

namespace fade::cli {

/// Source / initial-condition specification: a named preset or tabulated
/// interior samples loaded from a file (one value per line, N-1 lines).
struct FieldSpec {
    enum class Kind { Zero, Sine, Gaussian, Table };
    Kind kind = Kind::Zero;
    double amplitude = 0.0;
    double wavenumber = 1.0;  ///< q in A sin(q pi x / L)
    double center = 0.0;
    double width = 1.0;
    std::string file;

    /// Samples at the interior nodes x_i = i L / N.
    Vector sample(const Grid& g, double L) const;
    /// Continuous evaluation on [0, L] (tables are interpolated linearly,
    /// zero at both boundaries).
    double evaluate(double x, const Grid& g, double L) const;
};

/// Flat key = value run configuration; unknown keys are errors.
struct RunConfig {
    ModelParams params{};
    int N = 0;
    int M = 0;
    FieldSpec source;
    FieldSpec ic;
    NoiseSpec noise;
    int reg_order = 1;
    std::optional<double> fixed_lambda;
    std::optional<double> lambda_min;
    std::optional<double> lambda_max;
    int lambda_count = 30;
    std::string out_dir = ".";
    bool with_analytic = false;
    bool refine = false;
    bool debug_identity_k = false;
    std::optional<double> k_max;
    std::optional<int> n_k;
    double x_pad = 0.0;
    std::vector<int> perturb_modes = {1, 2, 4, 8, 16, 32};
    double perturb_amplitude = 1.0;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Command drivers. Each writes its CSV outputs into cfg.out_dir and
/// throws std::invalid_argument (config) or std::runtime_error
/// (numerical) on failure.
void cmd_forward(const RunConfig& cfg);
void cmd_invert(const RunConfig& cfg);
void cmd_lcurve(const RunConfig& cfg);
void cmd_diagnose(const RunConfig& cfg);

}  // namespace fade::cli
