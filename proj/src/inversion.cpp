#include "fade/inversion.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fade {

void RegularizationConfig::validate() const {
    if (order != 0 && order != 1)
        throw std::invalid_argument("RegularizationConfig: order must be 0 or 1");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > 0.0))
            throw std::invalid_argument("RegularizationConfig: lambda grid entries must be > 0");
        if (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1]))
            throw std::invalid_argument("RegularizationConfig: lambda grid must be increasing");
    }
    if (fixed_lambda && !(*fixed_lambda > 0.0))
        throw std::invalid_argument("RegularizationConfig: fixed_lambda must be > 0");
}

std::vector<double> RegularizationConfig::default_lambda_grid(const Matrix& K, const Vector& Y,
                                                              int count) {
    if (count < 1) throw std::invalid_argument("default_lambda_grid: count must be >= 1");
    const double scale = (K.transpose() * Y).norm() / (K.transpose() * K).norm();
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = scale;
        return grid;
    }
    const double lo = std::log10(1e-8 * scale);
    const double hi = std::log10(1e2 * scale);
    for (int i = 0; i < count; ++i)
        grid[i] = std::pow(10.0, lo + (hi - lo) * double(i) / double(count - 1));
    return grid;
}

Matrix difference_matrix(int order, int n, double dx) {
    if (n < 2) throw std::invalid_argument("difference_matrix: n must be >= 2");
    if (order == 0) return Matrix::Identity(n, n);
    if (order != 1) throw std::invalid_argument("difference_matrix: order must be 0 or 1");
    if (!(dx > 0.0)) throw std::invalid_argument("difference_matrix: dx must be positive");
    Matrix D = Matrix::Zero(n - 1, n);
    for (int i = 0; i < n - 1; ++i) {
        D(i, i) = -1.0 / dx;
        D(i, i + 1) = 1.0 / dx;
    }
    return D;
}

Vector tikhonov_solve(const Matrix& K, const Vector& Y, double lambda, const Matrix& D) {
    if (K.rows() != Y.size() || D.cols() != K.cols())
        throw std::invalid_argument("tikhonov_solve: dimension mismatch");
    if (lambda < 0.0) throw std::invalid_argument("tikhonov_solve: lambda must be >= 0");

    const Eigen::Index n = K.cols();
    Matrix aug;
    Vector rhs;
    if (lambda > 0.0) {
        aug.resize(K.rows() + D.rows(), n);
        aug.topRows(K.rows()) = K;
        aug.bottomRows(D.rows()) = std::sqrt(lambda) * D;
        rhs = Vector::Zero(aug.rows());
        rhs.head(K.rows()) = Y;
    } else {
        aug = K;
        rhs = Y;
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(aug);
    if (qr.rank() < n) {
        if (lambda == 0.0)
            throw std::runtime_error(
                "tikhonov_solve: K is numerically rank deficient at lambda = 0; "
                "use a positive regularization parameter");
        throw std::runtime_error("tikhonov_solve: augmented system is rank deficient");
    }
    return qr.solve(rhs);
}

namespace {

double log_guarded(double v) { return std::log(std::max(v, 1e-300)); }

// Signed three-point curvature of the circumscribed circle through
// consecutive polyline points; positive at the convex (toward the origin)
// corner of the L.
double three_point_curvature(double x1, double y1, double x2, double y2, double x3, double y3) {
    const double ax = x2 - x1, ay = y2 - y1;
    const double bx = x3 - x2, by = y3 - y2;
    const double cx = x3 - x1, cy = y3 - y1;
    const double la = std::hypot(ax, ay), lb = std::hypot(bx, by), lc = std::hypot(cx, cy);
    if (la == 0.0 || lb == 0.0 || lc == 0.0) return 0.0;
    return 2.0 * (ax * by - ay * bx) / (la * lb * lc);
}

}  // namespace

LCurveResult l_curve_select(const Matrix& K, const Vector& Y, const Matrix& D,
                            const RegularizationConfig& cfg) {
    cfg.validate();
    if (cfg.lambda_grid.empty())
        throw std::invalid_argument("l_curve_select: lambda grid must be nonempty");

    const int n = int(cfg.lambda_grid.size());
    LCurveResult res;
    res.curve.resize(n);
    for (int i = 0; i < n; ++i) {
        const double lambda = cfg.lambda_grid[i];
        const Vector R = tikhonov_solve(K, Y, lambda, D);
        res.curve[i] = {lambda, (Y - K * R).norm(), (D * R).norm(), 0.0};
    }

    if (n == 1) {
        res.selected_index = 0;
        res.lambda = res.curve[0].lambda;
        return res;
    }

    double rho_min = res.curve[0].residual_norm, rho_max = rho_min;
    for (const auto& pt : res.curve) {
        rho_min = std::min(rho_min, pt.residual_norm);
        rho_max = std::max(rho_max, pt.residual_norm);
    }
    if (rho_max - rho_min <= 1e-12 * std::max(rho_max, 1e-300)) {
        res.degenerate = true;
        res.selected_index = (n - 1) / 2;  // median grid lambda
        res.lambda = res.curve[res.selected_index].lambda;
        return res;
    }

    if (n < 3) {
        res.selected_index = n - 1;  // no interior point; take the larger lambda
        res.lambda = res.curve[res.selected_index].lambda;
        return res;
    }

    int best = -1;
    double best_curv = -std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < n; ++i) {
        const double c = three_point_curvature(
            log_guarded(res.curve[i - 1].residual_norm), log_guarded(res.curve[i - 1].seminorm),
            log_guarded(res.curve[i].residual_norm), log_guarded(res.curve[i].seminorm),
            log_guarded(res.curve[i + 1].residual_norm), log_guarded(res.curve[i + 1].seminorm));
        res.curve[i].curvature = c;
        if (c >= best_curv) {  // ties break toward the larger lambda
            best_curv = c;
            best = i;
        }
    }
    res.selected_index = best;
    res.lambda = res.curve[best].lambda;
    return res;
}

InversionResult run_inversion(const Matrix& K, const Vector& Y, const Matrix& D,
                              const RegularizationConfig& cfg) {
    cfg.validate();
    double lambda;
    if (cfg.fixed_lambda) {
        lambda = *cfg.fixed_lambda;
    } else {
        RegularizationConfig grid_cfg = cfg;
        if (grid_cfg.lambda_grid.empty())
            grid_cfg.lambda_grid = RegularizationConfig::default_lambda_grid(K, Y);
        lambda = l_curve_select(K, Y, D, grid_cfg).lambda;
    }
    InversionResult out;
    out.r_est = tikhonov_solve(K, Y, lambda, D);
    out.lambda_used = lambda;
    out.residual_norm = (Y - K * out.r_est).norm();
    out.solution_seminorm = (D * out.r_est).norm();
    return out;
}

Vector add_noise(const Vector& Y, const NoiseSpec& spec) {
    if (spec.level < 0.0) throw std::invalid_argument("add_noise: level must be >= 0");
    if (spec.level == 0.0) return Y;
    // Box-Muller over mt19937_64 rather than std::normal_distribution,
    // whose output sequence is implementation-defined.
    std::mt19937_64 eng(spec.seed);
    auto uniform01 = [&eng]() {
        return (double(eng() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
    };
    Vector out(Y.size());
    for (Eigen::Index i = 0; i < Y.size(); ++i) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        out[i] = Y[i] * (1.0 + spec.level * z);
    }
    return out;
}

double relative_error(const Vector& r_est, const Vector& r_true) {
    if (r_est.size() != r_true.size())
        throw std::invalid_argument("relative_error: length mismatch");
    const double denom = r_true.norm();
    if (denom == 0.0) throw std::invalid_argument("relative_error: zero truth vector");
    return 100.0 * (r_est - r_true).norm() / denom;
}

Vector svd_spectrum(const Matrix& K) {
    Eigen::BDCSVD<Matrix> svd(K);
    return svd.singularValues();
}

std::vector<PerturbationPoint> perturbation_decay_test(const ForwardMap& fm, double amplitude,
                                                       const std::vector<int>& modes) {
    const int n = fm.grid.interior();
    const double L = fm.params.L;
    const double sqrt_dx = std::sqrt(fm.grid.dx);
    std::vector<PerturbationPoint> out;
    out.reserve(modes.size());
    for (int mode : modes) {
        if (mode < 1) throw std::invalid_argument("perturbation_decay_test: modes must be >= 1");
        Vector delta(n);
        for (int i = 0; i < n; ++i) {
            const double x = L * double(i + 1) / double(fm.grid.N);
            delta[i] = amplitude * std::sin(mode * std::numbers::pi * x / L);
        }
        out.push_back({mode, sqrt_dx * delta.norm(), sqrt_dx * (fm.K * delta).norm()});
    }
    return out;
}

std::vector<PerturbationPoint> perturbation_decay_test(const ModelParams& p, const Grid& g,
                                                       double amplitude,
                                                       const std::vector<int>& modes) {
    return perturbation_decay_test(assemble_forward_map(p, g), amplitude, modes);
}

}  // namespace fade
