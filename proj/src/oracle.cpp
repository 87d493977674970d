#include "fade/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fade/fractional.hpp"

namespace fade {

using Complex = std::complex<double>;
using std::numbers::pi;

void SpectralConfig::validate() const {
    if (!(k_max > 0.0)) throw std::invalid_argument("SpectralConfig: k_max must be positive");
    if (n_k < 64 || n_k % 2 != 0)
        throw std::invalid_argument("SpectralConfig: n_k must be even and >= 64");
    if (x_pad < 0.0) throw std::invalid_argument("SpectralConfig: x_pad must be >= 0");
}

SpectralConfig SpectralConfig::recommended(const ModelParams& p, double t_min, double t_max) {
    validate_params(p);
    if (!(t_min > 0.0) || t_max < t_min)
        throw std::invalid_argument("SpectralConfig::recommended: need 0 < t_min <= t_max");
    const double c = std::cos(p.theta * pi / 2.0);
    double k_max = std::pow(std::log(1e12) / (p.d * c * t_min), 1.0 / p.alpha);
    k_max = std::max(k_max, 8.0 * pi / p.L);
    // One alias period must cover [0,L] plus drift and the kernel spread.
    const double spread = std::pow(p.d * t_max, 1.0 / p.alpha);
    const double half_window = 2.0 * (p.L + std::abs(p.nu) * t_max + 8.0 * spread) + 0.0;
    int n_k = int(std::ceil(2.0 * k_max * half_window / pi));
    n_k = std::max(n_k, 256);
    n_k += n_k % 2;
    return SpectralConfig{k_max, n_k, 0.0};
}

Complex green_hat(double k, double t, const ModelParams& p) {
    if (t < 0.0) throw std::invalid_argument("green_hat: t must be >= 0");
    const Complex z = Complex(0.0, p.nu * k) - p.d * riesz_feller_symbol(k, p.alpha, p.theta);
    return std::exp(z * t);
}

namespace {

// exp(w) - 1 without cancellation for small |w|.
Complex cexpm1(Complex w) {
    if (std::abs(w) > 0.5) return std::exp(w) - 1.0;
    Complex term = w;
    Complex sum = w;
    for (int n = 2; n <= 24; ++n) {
        term *= w / double(n);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double tail_bound(double t, const ModelParams& p, const SpectralConfig& cfg) {
    const double c = std::cos(p.theta * pi / 2.0);
    return std::exp(-p.d * std::pow(cfg.k_max, p.alpha) * c * t);
}

void require_resolvable(double t, const ModelParams& p, const SpectralConfig& cfg) {
    if (tail_bound(t, p, cfg) > 1e-2)
        throw std::invalid_argument(
            "oracle: t is below the resolvable threshold for the configured k_max "
            "(the kernel is still delta-like); increase k_max or t");
}

}  // namespace

Complex time_integral_kernel(double k, double T, const ModelParams& p) {
    if (!(T > 0.0)) throw std::invalid_argument("time_integral_kernel: T must be positive");
    const Complex z = Complex(0.0, p.nu * k) - p.d * riesz_feller_symbol(k, p.alpha, p.theta);
    if (std::abs(z) < 1e-12) return T * (1.0 + z * T / 2.0 + z * z * T * T / 6.0);
    return cexpm1(z * T) / z;
}

double green_eval(double x, double t, const ModelParams& p, const SpectralConfig& cfg,
                  QuadratureDiagnostics* diag) {
    validate_params(p);
    cfg.validate();
    if (!(t > 0.0)) throw std::invalid_argument("green_eval: t must be positive");
    require_resolvable(t, p, cfg);

    const double dk = cfg.dk();
    Complex sum = 0.0;
    for (int m = 0; m <= cfg.n_k; ++m) {
        const double k = -cfg.k_max + m * dk;
        const double w = (m == 0 || m == cfg.n_k) ? 0.5 : 1.0;
        sum += w * green_hat(k, t, p) * std::polar(1.0, -k * x);
    }
    sum *= dk / (2.0 * pi);
    if (diag) {
        diag->imag_residue = std::abs(sum.imag());
        diag->tail_bound = tail_bound(t, p, cfg);
        diag->tail_ok = diag->tail_bound <= 1e-8;
    }
    return sum.real();
}

NormalizationCheck green_normalization(double t, const ModelParams& p,
                                       const SpectralConfig& cfg) {
    validate_params(p);
    cfg.validate();
    require_resolvable(t, p, cfg);

    // x-grid conjugate to the k-grid: J = n_k points spaced pi/k_max over
    // one alias period 2*pi/dk. On it, sum_j exp(-i k_m x_j) vanishes for
    // every node k_m except k = 0, so the trapezoid of G recovers
    // Ghat(0,t) = 1 including all aliased tail mass.
    const int J = cfg.n_k;
    const double dxs = pi / cfg.k_max;
    const double dk = cfg.dk();
    const double x0 = -0.5 * J * dxs;

    double integral = 0.0;
    double max_imag = 0.0;
    for (int j = 0; j < J; ++j) {
        const double x = x0 + j * dxs;
        Complex sum = 0.0;
        for (int m = 0; m <= cfg.n_k; ++m) {
            const double k = -cfg.k_max + m * dk;
            const double w = (m == 0 || m == cfg.n_k) ? 0.5 : 1.0;
            sum += w * green_hat(k, t, p) * std::polar(1.0, -k * x);
        }
        sum *= dk / (2.0 * pi);
        integral += sum.real() * dxs;
        max_imag = std::max(max_imag, std::abs(sum.imag()));
    }
    return {integral, max_imag};
}

namespace {

// Fourier transform hat(f)(k) = int_0^L f(y) exp(i k y) dy by composite
// Simpson, with the node count tied to the largest |k| requested.
std::vector<Complex> transform_on_grid(const ScalarField& f, double L,
                                       const SpectralConfig& cfg) {
    int n_y = std::max(4096, int(std::ceil(5.1 * cfg.k_max * L)));
    n_y += n_y % 2;
    const double dy = L / n_y;

    std::vector<double> fy(n_y + 1);
    for (int j = 0; j <= n_y; ++j) fy[j] = f(j * dy);

    std::vector<Complex> out(cfg.n_k + 1);
    const double dk = cfg.dk();
    for (int m = 0; m <= cfg.n_k; ++m) {
        const double k = -cfg.k_max + m * dk;
        Complex acc = 0.0;
        for (int j = 0; j <= n_y; ++j) {
            const double w = (j == 0 || j == n_y) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            acc += w * fy[j] * std::polar(1.0, k * j * dy);
        }
        out[m] = acc * (dy / 3.0);
    }
    return out;
}

}  // namespace

Eigen::VectorXd analytic_solution_grid(const Eigen::VectorXd& xs, double t, const ScalarField& f,
                                       const ScalarField& g0, const ModelParams& p,
                                       const SpectralConfig& cfg) {
    validate_params(p);
    cfg.validate();
    if (!(t > 0.0)) throw std::invalid_argument("analytic_solution: t must be positive");
    require_resolvable(t, p, cfg);

    const auto f_hat = transform_on_grid(f, p.L, cfg);
    const auto g_hat = transform_on_grid(g0, p.L, cfg);

    const double dk = cfg.dk();
    std::vector<Complex> spectral(cfg.n_k + 1);
    for (int m = 0; m <= cfg.n_k; ++m) {
        const double k = -cfg.k_max + m * dk;
        spectral[m] = time_integral_kernel(k, t, p) * f_hat[m] + green_hat(k, t, p) * g_hat[m];
    }

    Eigen::VectorXd u(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
        Complex sum = 0.0;
        for (int m = 0; m <= cfg.n_k; ++m) {
            const double k = -cfg.k_max + m * dk;
            const double w = (m == 0 || m == cfg.n_k) ? 0.5 : 1.0;
            sum += w * spectral[m] * std::polar(1.0, -k * xs[i]);
        }
        u[i] = (sum * (dk / (2.0 * pi))).real();
    }
    return u;
}

double analytic_solution(double x, double t, const ScalarField& f, const ScalarField& g0,
                         const ModelParams& p, const SpectralConfig& cfg) {
    Eigen::VectorXd xs(1);
    xs[0] = x;
    return analytic_solution_grid(xs, t, f, g0, p, cfg)[0];
}

}  // namespace fade
