// Python bindings for the fractional advection-dispersion solver suite.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fade/forward.hpp"
#include "fade/fractional.hpp"
#include "fade/inversion.hpp"
#include "fade/oracle.hpp"
#include "fade/params.hpp"

namespace py = pybind11;
using namespace fade;

PYBIND11_MODULE(_fade, m) {
    m.doc() = "Space-fractional advection-dispersion solvers: implicit shifted-Grunwald "
              "forward scheme, spectral fundamental solution, Tikhonov inverse-source "
              "estimation";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double nu, double d, double alpha, double theta, double L, double T) {
                 return validate_params(ModelParams{nu, d, alpha, theta, L, T});
             }),
             py::arg("nu"), py::arg("d"), py::arg("alpha"), py::arg("theta"), py::arg("L"),
             py::arg("T"))
        .def_readonly("nu", &ModelParams::nu)
        .def_readonly("d", &ModelParams::d)
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("theta", &ModelParams::theta)
        .def_readonly("L", &ModelParams::L)
        .def_readonly("T", &ModelParams::T)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(nu=" + std::to_string(p.nu) + ", d=" + std::to_string(p.d) +
                   ", alpha=" + std::to_string(p.alpha) + ", theta=" + std::to_string(p.theta) +
                   ", L=" + std::to_string(p.L) + ", T=" + std::to_string(p.T) + ")";
        });

    py::class_<Grid>(m, "Grid")
        .def(py::init(&Grid::make), py::arg("params"), py::arg("N"), py::arg("M"))
        .def_readonly("N", &Grid::N)
        .def_readonly("dx", &Grid::dx)
        .def_readonly("M", &Grid::M)
        .def_readonly("dt", &Grid::dt)
        .def_property_readonly("interior", &Grid::interior)
        .def("interior_nodes", &Grid::interior_nodes, py::arg("L"));

    m.def("validate_params", &validate_params, py::arg("params"));
    m.def(
        "grunwald_weights",
        [](double alpha, std::size_t K) {
            return Eigen::Map<const Vector>(grunwald_weights(alpha, K).values.data(), K + 1)
                .eval();
        },
        py::arg("alpha"), py::arg("K"), "Normalized Grunwald weights xi_{alpha,0..K}");
    m.def(
        "skew_coefficients",
        [](double alpha, double theta) {
            const auto s = skew_coefficients(alpha, theta);
            return std::pair{s.a_r, s.a_l};
        },
        py::arg("alpha"), py::arg("theta"), "(a_r, a_l) of the shifted Grunwald splitting");
    m.def("riesz_feller_symbol", &riesz_feller_symbol, py::arg("k"), py::arg("alpha"),
          py::arg("theta"));

    py::class_<SystemMatrices>(m, "SystemMatrices")
        .def_readonly("Gm", &SystemMatrices::Gm)
        .def_readonly("Lm", &SystemMatrices::Lm)
        .def_readonly("Vm", &SystemMatrices::Vm)
        .def_readonly("A", &SystemMatrices::A)
        .def("system_matrix", &SystemMatrices::system_matrix);
    py::class_<ForwardMap>(m, "ForwardMap")
        .def_readonly("K", &ForwardMap::K)
        .def_readonly("A_pow_M", &ForwardMap::A_pow_M);

    m.def("assemble_operators", &assemble_operators, py::arg("params"), py::arg("grid"));
    m.def("step_implicit", &step_implicit, py::arg("mats"), py::arg("c_prev"), py::arg("r"));
    m.def(
        "solve_forward",
        [](const ModelParams& p, const Grid& g, const Vector& g0, const Vector& r) {
            const auto traj = solve_forward(p, g, g0, r);
            Matrix out(traj.size(), g.interior());
            for (std::size_t j = 0; j < traj.size(); ++j) out.row(Eigen::Index(j)) = traj[j];
            return out;
        },
        py::arg("params"), py::arg("grid"), py::arg("g0"), py::arg("r"),
        "Trajectory as an (M+1, N-1) array, one time level per row");
    m.def("assemble_forward_map", &assemble_forward_map, py::arg("params"), py::arg("grid"));
    m.def("observation_vector", &observation_vector, py::arg("c_final"), py::arg("A_pow_M"),
          py::arg("c0"));

    py::class_<SpectralConfig>(m, "SpectralConfig")
        .def(py::init([](double k_max, int n_k, double x_pad) {
                 SpectralConfig cfg{k_max, n_k, x_pad};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("k_max"), py::arg("n_k"), py::arg("x_pad") = 0.0)
        .def_static("recommended", &SpectralConfig::recommended, py::arg("params"),
                    py::arg("t_min"), py::arg("t_max"))
        .def_readonly("k_max", &SpectralConfig::k_max)
        .def_readonly("n_k", &SpectralConfig::n_k)
        .def_readonly("x_pad", &SpectralConfig::x_pad);

    m.def("green_hat", &green_hat, py::arg("k"), py::arg("t"), py::arg("params"));
    m.def("time_integral_kernel", &time_integral_kernel, py::arg("k"), py::arg("T"),
          py::arg("params"));
    m.def(
        "green_eval",
        [](double x, double t, const ModelParams& p, const SpectralConfig& cfg) {
            return green_eval(x, t, p, cfg);
        },
        py::arg("x"), py::arg("t"), py::arg("params"), py::arg("cfg"));
    m.def(
        "green_normalization",
        [](double t, const ModelParams& p, const SpectralConfig& cfg) {
            const auto check = green_normalization(t, p, cfg);
            return std::pair{check.integral, check.imag_residue};
        },
        py::arg("t"), py::arg("params"), py::arg("cfg"),
        "(integral over the conjugate window, max pointwise imaginary residue)");
    m.def("analytic_solution", &analytic_solution, py::arg("x"), py::arg("t"), py::arg("f"),
          py::arg("g0"), py::arg("params"), py::arg("cfg"));
    m.def("analytic_solution_grid", &analytic_solution_grid, py::arg("xs"), py::arg("t"),
          py::arg("f"), py::arg("g0"), py::arg("params"), py::arg("cfg"));

    py::class_<RegularizationConfig>(m, "RegularizationConfig")
        .def(py::init([](int order, std::vector<double> lambda_grid,
                         std::optional<double> fixed_lambda) {
                 RegularizationConfig cfg{order, std::move(lambda_grid), fixed_lambda};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("order") = 1, py::arg("lambda_grid") = std::vector<double>{},
             py::arg("fixed_lambda") = std::nullopt)
        .def_readonly("order", &RegularizationConfig::order)
        .def_readonly("lambda_grid", &RegularizationConfig::lambda_grid)
        .def_readonly("fixed_lambda", &RegularizationConfig::fixed_lambda)
        .def_static("default_lambda_grid", &RegularizationConfig::default_lambda_grid,
                    py::arg("K"), py::arg("Y"), py::arg("count") = 30);

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init([](double level, std::uint64_t seed) {
                 return NoiseSpec{level, seed};
             }),
             py::arg("level"), py::arg("seed") = 0)
        .def_readonly("level", &NoiseSpec::level)
        .def_readonly("seed", &NoiseSpec::seed);

    py::class_<InversionResult>(m, "InversionResult")
        .def_readonly("r_est", &InversionResult::r_est)
        .def_readonly("lambda_used", &InversionResult::lambda_used)
        .def_readonly("residual_norm", &InversionResult::residual_norm)
        .def_readonly("solution_seminorm", &InversionResult::solution_seminorm)
        .def_readonly("relative_error_pct", &InversionResult::relative_error_pct);

    py::class_<LCurvePoint>(m, "LCurvePoint")
        .def_readonly("lam", &LCurvePoint::lambda)
        .def_readonly("residual_norm", &LCurvePoint::residual_norm)
        .def_readonly("seminorm", &LCurvePoint::seminorm)
        .def_readonly("curvature", &LCurvePoint::curvature);
    py::class_<LCurveResult>(m, "LCurveResult")
        .def_readonly("lam", &LCurveResult::lambda)
        .def_readonly("selected_index", &LCurveResult::selected_index)
        .def_readonly("degenerate", &LCurveResult::degenerate)
        .def_readonly("curve", &LCurveResult::curve);

    m.def("difference_matrix", &difference_matrix, py::arg("order"), py::arg("n"), py::arg("dx"));
    m.def("tikhonov_solve", &tikhonov_solve, py::arg("K"), py::arg("Y"), py::arg("lam"),
          py::arg("D"));
    m.def("l_curve_select", &l_curve_select, py::arg("K"), py::arg("Y"), py::arg("D"),
          py::arg("cfg"));
    m.def("run_inversion", &run_inversion, py::arg("K"), py::arg("Y"), py::arg("D"),
          py::arg("cfg"));
    m.def("add_noise", &add_noise, py::arg("Y"), py::arg("spec"));
    m.def("relative_error", &relative_error, py::arg("r_est"), py::arg("r_true"));
    m.def("svd_spectrum", &svd_spectrum, py::arg("K"));
    m.def(
        "perturbation_decay_test",
        [](const ModelParams& p, const Grid& g, double amplitude, const std::vector<int>& modes) {
            std::vector<std::tuple<int, double, double>> out;
            for (const auto& pt : perturbation_decay_test(p, g, amplitude, modes))
                out.emplace_back(pt.mode, pt.input_norm, pt.output_norm);
            return out;
        },
        py::arg("params"), py::arg("grid"), py::arg("amplitude"), py::arg("modes"),
        "[(mode, input_norm, output_norm), ...]");
}
