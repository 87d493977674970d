#include "fade/forward.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

#include "fade/fractional.hpp"

namespace fade {

Grid Grid::make(const ModelParams& p, int N, int M) {
    validate_params(p);
    if (N < 3) throw std::invalid_argument("Grid: need at least 3 space intervals");
    if (M < 1) throw std::invalid_argument("Grid: need at least 1 time step");
    return Grid{N, p.L / N, M, p.T / M};
}

Vector Grid::interior_nodes(double L) const {
    Vector x(N - 1);
    for (int i = 1; i < N; ++i) x[i - 1] = L * double(i) / double(N);
    return x;
}

Matrix SystemMatrices::system_matrix() const {
    const int n = grid.interior();
    return Matrix::Identity(n, n) + Gm + Lm + Vm;
}

SystemMatrices assemble_operators(const ModelParams& p, const Grid& g) {
    validate_params(p);
    const int n = g.interior();
    const auto xi = grunwald_weights(p.alpha, std::size_t(g.N));
    const auto [a_r, a_l] = skew_coefficients(p.alpha, p.theta);

    // Row i of the implicit operator discretizes
    //   c_i - d dt delta_{alpha,x} c_i + (nu dt/dx)(c_i - c_{i-1}),
    // where -d dt delta_{alpha,x} contributes +(d dt/dx^alpha) times the
    // shifted Grunwald sums; boundary terms c_0 = c_N = 0 are dropped.
    const double coef = p.d * g.dt / std::pow(g.dx, p.alpha);
    const double gr = coef * a_r;
    const double gl = coef * a_l;

    Matrix Gm = Matrix::Zero(n, n);
    Matrix Lm = Matrix::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c <= std::min(r + 1, n - 1); ++c) Gm(r, c) = gr * xi[std::size_t(r - c + 1)];
        for (int c = std::max(r - 1, 0); c < n; ++c) Lm(r, c) = gl * xi[std::size_t(c - r + 1)];
    }

    // Backward difference for the advection term: -1 on the subdiagonal
    // (upwinded for nu > 0), regardless of the sign of nu.
    const double courant = p.nu * g.dt / g.dx;
    Matrix Vm = Matrix::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        Vm(r, r) = courant;
        if (r > 0) Vm(r, r - 1) = -courant;
    }

    SystemMatrices mats{std::move(Gm), std::move(Lm), std::move(Vm), Matrix(), g, p};
    const Matrix S = mats.system_matrix();
    Eigen::FullPivLU<Matrix> lu(S);
    if (!lu.isInvertible())
        throw std::runtime_error("assemble_operators: implicit system matrix is singular");
    mats.A = lu.inverse();
    return mats;
}

Vector step_implicit(const SystemMatrices& mats, const Vector& c_prev, const Vector& r) {
    const int n = mats.grid.interior();
    if (c_prev.size() != n || r.size() != n)
        throw std::invalid_argument("step_implicit: state/source dimension mismatch");
    return mats.A * (c_prev + mats.grid.dt * r);
}

std::vector<Vector> solve_forward(const ModelParams& p, const Grid& g, const Vector& g0,
                                  const Vector& r) {
    const auto mats = assemble_operators(p, g);
    std::vector<Vector> traj;
    traj.reserve(std::size_t(g.M) + 1);
    traj.push_back(g0);
    for (int j = 0; j < g.M; ++j) traj.push_back(step_implicit(mats, traj.back(), r));
    return traj;
}

namespace {

// A^m by repeated squaring.
Matrix matrix_power(const Matrix& A, int m) {
    const int n = int(A.rows());
    Matrix result = Matrix::Identity(n, n);
    Matrix base = A;
    for (int e = m; e > 0; e >>= 1) {
        if (e & 1) result = result * base;
        if (e > 1) base = base * base;
    }
    return result;
}

// I + A + ... + A^{m-1} without inverting I - A, via
// G(2m) = G(m) + A^m G(m), in O(log m) multiplies.
Matrix geometric_sum(const Matrix& A, int m) {
    const int n = int(A.rows());
    if (m <= 0) return Matrix::Zero(n, n);
    Matrix G = Matrix::Identity(n, n);  // G(1)
    Matrix P = A;                       // A^(terms so far)
    int terms = 1;
    // Build up following the binary digits of m, most significant first.
    int bits = 0;
    for (int e = m; e > 1; e >>= 1) ++bits;
    for (int b = bits - 1; b >= 0; --b) {
        G = G + P * G;
        P = P * P;
        terms *= 2;
        if ((m >> b) & 1) {
            G = Matrix::Identity(n, n) + A * G;
            P = P * A;
            terms += 1;
        }
    }
    return G;
}

}  // namespace

ForwardMap assemble_forward_map(const ModelParams& p, const Grid& g) {
    const auto mats = assemble_operators(p, g);
    const int n = g.interior();
    const Matrix& A = mats.A;
    const Matrix A_pow_M = matrix_power(A, g.M);

    const Matrix I = Matrix::Identity(n, n);
    Eigen::FullPivLU<Matrix> lu(I - A);
    Matrix K;
    if (lu.isInvertible()) {
        K = lu.solve((I - A_pow_M) * A) * g.dt;
    } else {
        // Column-accumulation form K = sum_{j=1..M} A^j dt.
        K = A * geometric_sum(A, g.M) * g.dt;
    }
    return ForwardMap{std::move(K), A_pow_M, g, p};
}

Vector observation_vector(const Vector& c_final, const Matrix& A_pow_M, const Vector& c0) {
    if (c_final.size() != c0.size() || A_pow_M.rows() != c_final.size())
        throw std::invalid_argument("observation_vector: dimension mismatch");
    return c_final - A_pow_M * c0;
}

}  // namespace fade
