#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "fade/params.hpp"

namespace fade {

/// Truncated Fourier quadrature settings for the fundamental-solution
/// evaluator. The k-grid is uniform on [-k_max, k_max] with n_k intervals
/// (n_k even, so k = 0 is a node) and trapezoidal weights.
struct SpectralConfig {
    double k_max;       ///< frequency truncation
    int n_k;            ///< quadrature intervals (>= 64, even)
    double x_pad = 0.0; ///< extra physical window beyond [0, L] for kernel dumps

    void validate() const;
    double dk() const { return 2.0 * k_max / n_k; }

    /// Picks k_max from the tail bound exp(-d k^alpha cos(theta pi/2) t_min) <= 1e-12
    /// and n_k so one alias period spans the support reachable by time t_max.
    static SpectralConfig recommended(const ModelParams& p, double t_min, double t_max);
};

/// Fourier transform of the Green function, exp((i nu k - d psi(k)) t).
std::complex<double> green_hat(double k, double t, const ModelParams& p);

/// Time-integrated kernel of the source term,
///   int_0^T Ghat(k, T - tau) dtau = (exp(zT) - 1)/z,  z = i nu k - d psi(k),
/// with the limit value T at z -> 0 (series-expanded for small |z|T).
std::complex<double> time_integral_kernel(double k, double T, const ModelParams& p);

struct QuadratureDiagnostics {
    double imag_residue = 0.0;  ///< |Im| of the inverse-transform sum
    double tail_bound = 0.0;    ///< |Ghat(k_max, t)|
    bool tail_ok = true;        ///< tail_bound <= 1e-8
};

/// Green function G(x, t) by trapezoidal inversion of green_hat.
/// Requires t > 0. Refuses (throws std::invalid_argument) when t is so
/// small that |Ghat(k_max, t)| > 1e-2, i.e. the configured k_max cannot
/// resolve the near-delta kernel; sets diag->tail_ok = false (quadrature
/// divergence warning) when the tail bound exceeds 1e-8.
double green_eval(double x, double t, const ModelParams& p, const SpectralConfig& cfg,
                  QuadratureDiagnostics* diag = nullptr);

struct NormalizationCheck {
    double integral;     ///< trapezoid of G over the conjugate window
    double imag_residue; ///< max pointwise |Im| over the window
};

/// Integrates G(., t) over one alias period of the k-grid (the window
/// conjugate to the quadrature spacing). On that window the trapezoid sum
/// telescopes to Ghat(0, t) = 1, so the deviation measures quadrature
/// self-consistency.
NormalizationCheck green_normalization(double t, const ModelParams& p, const SpectralConfig& cfg);

using ScalarField = std::function<double(double)>;

/// Solution of the whole-line problem with source f and initial data g0,
/// both extended by zero outside [0, L]:
///   u(x,t) = int [int_0^t G(x-y, t-tau) dtau] f(y) dy + int G(x-y, t) g0(y) dy.
/// The tau-integral is evaluated in closed form (time_integral_kernel);
/// the x and y integrals spectrally / by composite Simpson.
double analytic_solution(double x, double t, const ScalarField& f, const ScalarField& g0,
                         const ModelParams& p, const SpectralConfig& cfg);

/// Batch form: evaluates u(., t) on all points of xs with the source and
/// initial-data transforms computed once.
Eigen::VectorXd analytic_solution_grid(const Eigen::VectorXd& xs, double t, const ScalarField& f,
                                       const ScalarField& g0, const ModelParams& p,
                                       const SpectralConfig& cfg);

}  // namespace fade
