#include "fade/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fade {

namespace {

[[noreturn]] void reject(const char* constraint, const ModelParams& p) {
    std::ostringstream msg;
    msg << "invalid model parameters: " << constraint
        << " (nu=" << p.nu << ", d=" << p.d << ", alpha=" << p.alpha
        << ", theta=" << p.theta << ", L=" << p.L << ", T=" << p.T << ")";
    throw std::invalid_argument(msg.str());
}

}  // namespace

ModelParams validate_params(const ModelParams& p) {
    if (!(std::isfinite(p.nu) && std::isfinite(p.d) && std::isfinite(p.alpha) &&
          std::isfinite(p.theta) && std::isfinite(p.L) && std::isfinite(p.T)))
        reject("all parameters must be finite", p);
    if (!(p.alpha > 1.0 && p.alpha <= 2.0))
        reject("fractional order must satisfy 1 < alpha <= 2", p);
    const double skew_bound = std::min(p.alpha, 2.0 - p.alpha);
    if (!(std::abs(p.theta) <= skew_bound))
        reject("skewness must satisfy |theta| <= min(alpha, 2 - alpha)", p);
    if (!(p.d > 0.0)) reject("dispersion coefficient d must be positive", p);
    if (!(p.L > 0.0)) reject("domain length L must be positive", p);
    if (!(p.T > 0.0)) reject("final time T must be positive", p);
    return p;
}

}  // namespace fade
