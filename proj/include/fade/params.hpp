#pragma once

namespace fade {

/// Physical and model constants of the fractional advection-dispersion
/// problem on [0, L] x [0, T].
///
/// Admissibility:
///   1 < alpha <= 2
///   |theta| <= min(alpha, 2 - alpha)   (theta = 0 is forced at alpha = 2)
///   d > 0, L > 0, T > 0
struct ModelParams {
    double nu;     ///< average velocity
    double d;      ///< dispersion coefficient
    double alpha;  ///< fractional order of the space derivative
    double theta;  ///< skewness of the Riesz-Feller derivative
    double L;      ///< domain length
    double T;      ///< final time
};

/// Checks every admissibility constraint and returns the parameters
/// unchanged. Throws std::invalid_argument naming the violated
/// constraint otherwise.
ModelParams validate_params(const ModelParams& p);

}  // namespace fade
