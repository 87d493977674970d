#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fade {

/// Normalized Grunwald weights xi_{alpha,k} = Gamma(k-alpha) / (Gamma(-alpha) Gamma(k+1)).
///
/// Generated by the multiplicative recurrence
///   xi_0 = 1,  xi_k = xi_{k-1} * (k - 1 - alpha) / k,
/// which avoids the Gamma-ratio overflow near k ~ 170.
struct GrunwaldWeights {
    double alpha;
    std::vector<double> values;  ///< xi_0 .. xi_K

    double operator[](std::size_t k) const { return values[k]; }
    std::size_t size() const { return values.size(); }
};

/// Weights xi_{alpha,0..K}. Requires 1 < alpha <= 2.
GrunwaldWeights grunwald_weights(double alpha, std::size_t K);

/// Left/right coefficients of the shifted Grunwald splitting of the
/// Riesz-Feller derivative:
///   a_r = sin((alpha-theta)pi/2) / sin(alpha pi)
///   a_l = sin((alpha+theta)pi/2) / sin(alpha pi)
/// At alpha = 2 (theta = 0) the 0/0 form is replaced by the continuous
/// limit a_r = a_l = -1/2, which collapses the stencil onto the classical
/// central second difference.
struct SkewCoefficients {
    double a_r;
    double a_l;
};

SkewCoefficients skew_coefficients(double alpha, double theta);

/// Fourier symbol of the Riesz-Feller derivative,
///   psi_theta^alpha(k) = |k|^alpha * exp(i sign(k) theta pi/2).
/// Re psi > 0 for k != 0 on the admissible parameter set.
std::complex<double> riesz_feller_symbol(double k, double alpha, double theta);

}  // namespace fade
