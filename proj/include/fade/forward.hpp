#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fade/params.hpp"

namespace fade {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Uniform space/time discretization. Interior unknowns live at
/// x_i = i*dx, i = 1..N-1; the Dirichlet values at x_0 and x_N are zero.
struct Grid {
    int N;      ///< number of space intervals
    double dx;  ///< L / N
    int M;      ///< number of time steps
    double dt;  ///< T / M

    static Grid make(const ModelParams& p, int N, int M);

    int interior() const { return N - 1; }

    /// Interior node coordinates x_1 .. x_{N-1}.
    Vector interior_nodes(double L) const;
};

/// Pieces of the implicit one-step operator S = I + Gm + Lm + Vm and the
/// propagator A = S^{-1}. Gm/Lm carry the right/left shifted Grunwald
/// stencils (lower/upper Hessenberg patterns), Vm the upwinded advection
/// bidiagonal.
struct SystemMatrices {
    Matrix Gm;
    Matrix Lm;
    Matrix Vm;
    Matrix A;
    Grid grid;
    ModelParams params;

    Matrix system_matrix() const;  ///< S = I + Gm + Lm + Vm
};

/// Dense source-to-observation map: Y = K r for the physical source
/// samples r = [r(x_1) .. r(x_{N-1})]^T. K absorbs the dt scaling of the
/// per-step source increment, K = (I-A)^{-1} (I-A^M) A dt.
struct ForwardMap {
    Matrix K;
    Matrix A_pow_M;
    Grid grid;
    ModelParams params;
};

/// Assembles the implicit scheme. Throws std::runtime_error if the system
/// matrix is numerically singular (degenerate grid or parameters).
SystemMatrices assemble_operators(const ModelParams& p, const Grid& g);

/// One implicit step: C^{j+1} = A (C^j + dt r).
Vector step_implicit(const SystemMatrices& mats, const Vector& c_prev, const Vector& r);

/// Full trajectory C^0 .. C^M from interior initial data g0 and
/// time-independent interior source r.
std::vector<Vector> solve_forward(const ModelParams& p, const Grid& g, const Vector& g0,
                                  const Vector& r);

/// K via the closed geometric form, falling back to column accumulation
/// sum_j A^j dt if I - A is numerically singular.
ForwardMap assemble_forward_map(const ModelParams& p, const Grid& g);

/// Y = C^M - A^M C^0.
Vector observation_vector(const Vector& c_final, const Matrix& A_pow_M, const Vector& c0);

}  // namespace fade
