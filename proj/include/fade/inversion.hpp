#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fade/forward.hpp"

namespace fade {

/// Tikhonov stabilizer order and regularization-parameter grid.
struct RegularizationConfig {
    int order = 1;                        ///< 0: Omega = |R|, 1: Omega = |dR/dx|
    std::vector<double> lambda_grid;      ///< strictly increasing, all > 0
    std::optional<double> fixed_lambda;   ///< bypasses the L-curve when set

    void validate() const;

    /// 30 points log-spaced over [1e-8, 1e2] * |K^T Y| / |K^T K|.
    static std::vector<double> default_lambda_grid(const Matrix& K, const Vector& Y,
                                                   int count = 30);
};

/// Multiplicative Gaussian observation noise, Y_i -> Y_i (1 + level z_i),
/// with z_i standard normal from a deterministic seeded generator.
struct NoiseSpec {
    double level = 0.0;
    std::uint64_t seed = 0;
};

struct InversionResult {
    Vector r_est;
    double lambda_used = 0.0;
    double residual_norm = 0.0;      ///< |Y - K r_est|_2
    double solution_seminorm = 0.0;  ///< |D r_est|_2
    std::optional<double> relative_error_pct;
};

/// order 0: identity (n x n); order 1: forward differences, (n-1) x n with
/// rows (..., -1/dx, +1/dx, ...).
Matrix difference_matrix(int order, int n, double dx);

/// Minimizer of |Y - K R|^2 + lambda |D R|^2 via the augmented
/// least-squares system [K; sqrt(lambda) D] R ~ [Y; 0]. At lambda = 0 a
/// rank-deficient K is an error advising a positive lambda.
Vector tikhonov_solve(const Matrix& K, const Vector& Y, double lambda, const Matrix& D);

struct LCurvePoint {
    double lambda;
    double residual_norm;
    double seminorm;
    double curvature;  ///< three-point discrete curvature; 0 at the ends
};

struct LCurveResult {
    double lambda;
    int selected_index;
    bool degenerate = false;  ///< all residuals equal; median lambda returned
    std::vector<LCurvePoint> curve;
};

/// Solves for every lambda in cfg.lambda_grid and selects the point of
/// maximum discrete curvature of the (log residual, log seminorm)
/// polyline; ties break toward the larger lambda.
LCurveResult l_curve_select(const Matrix& K, const Vector& Y, const Matrix& D,
                            const RegularizationConfig& cfg);

/// Convenience driver: fixed-lambda bypass or L-curve selection (using
/// cfg.lambda_grid, or the default grid when empty), then the Tikhonov
/// solve at the chosen lambda. relative_error_pct is left unset.
InversionResult run_inversion(const Matrix& K, const Vector& Y, const Matrix& D,
                              const RegularizationConfig& cfg);

Vector add_noise(const Vector& Y, const NoiseSpec& spec);

/// 100 * |r_est - r_true|_2 / |r_true|_2. Throws on zero truth.
double relative_error(const Vector& r_est, const Vector& r_true);

/// Singular values, descending.
Vector svd_spectrum(const Matrix& K);

struct PerturbationPoint {
    int mode;
    double input_norm;   ///< sqrt(dx) |delta_n|_2, approx A sqrt(L/2)
    double output_norm;  ///< sqrt(dx) |K delta_n|_2
};

/// Pushes sinusoidal source perturbations delta_n = A sin(n pi x / L)
/// through the forward map; output norms decay in n while input norms
/// stay constant, which is the instability mechanism of the inverse
/// problem.
std::vector<PerturbationPoint> perturbation_decay_test(const ForwardMap& fm, double amplitude,
                                                       const std::vector<int>& modes);
std::vector<PerturbationPoint> perturbation_decay_test(const ModelParams& p, const Grid& g,
                                                       double amplitude,
                                                       const std::vector<int>& modes);

}  // namespace fade
