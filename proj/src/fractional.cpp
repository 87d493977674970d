#include "fade/fractional.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fade {

GrunwaldWeights grunwald_weights(double alpha, std::size_t K) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("grunwald_weights: alpha must satisfy 1 < alpha <= 2");
    GrunwaldWeights w{alpha, {}};
    w.values.resize(K + 1);
    w.values[0] = 1.0;
    for (std::size_t k = 1; k <= K; ++k)
        w.values[k] = w.values[k - 1] * ((double(k) - 1.0 - alpha) / double(k));
    return w;
}

SkewCoefficients skew_coefficients(double alpha, double theta) {
    using std::numbers::pi;
    if (alpha == 2.0) {
        // sin(alpha pi) vanishes; the analytic limit of both coefficients is -1/2.
        return {-0.5, -0.5};
    }
    const double denom = std::sin(alpha * pi);
    return {std::sin((alpha - theta) * pi / 2.0) / denom,
            std::sin((alpha + theta) * pi / 2.0) / denom};
}

std::complex<double> riesz_feller_symbol(double k, double alpha, double theta) {
    using std::numbers::pi;
    if (k == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::abs(k), alpha);
    const double sgn = k > 0.0 ? 1.0 : -1.0;
    return {mag * std::cos(theta * pi / 2.0), mag * sgn * std::sin(theta * pi / 2.0)};
}

}  // namespace fade
