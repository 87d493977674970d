#include "fade/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fade/oracle.hpp"

namespace fade::cli {

namespace {

// ---------------------------------------------------------------------
// logging (FADE_LOG = quiet | info | debug, default info)

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("FADE_LOG");
        if (!env) return 1;
        const std::string v(env);
        if (v == "quiet") return 0;
        if (v == "debug") return 2;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::fprintf(stderr, "[fade] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::fprintf(stderr, "[fade:debug] %s\n", msg.c_str());
}

// ---------------------------------------------------------------------
// CSV output, 17 significant digits (round-trip exact)

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_csv(const std::filesystem::path& dir, const std::string& name,
                       const std::string& header) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + (dir / name).string());
    out << header << "\n";
    return out;
}

// ---------------------------------------------------------------------
// config parsing

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: key '" + key + "' expects true/false, got '" + v + "'");
}

FieldSpec::Kind to_kind(const std::string& key, const std::string& v) {
    if (v == "zero") return FieldSpec::Kind::Zero;
    if (v == "sine") return FieldSpec::Kind::Sine;
    if (v == "gaussian") return FieldSpec::Kind::Gaussian;
    if (v == "table") return FieldSpec::Kind::Table;
    throw std::invalid_argument("config: key '" + key +
                                "' expects zero|sine|gaussian|table, got '" + v + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects an unsigned integer, got '" +
                                    v + "'");
    }
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(to_int(key, trim(tok)));
    if (out.empty()) throw std::invalid_argument("config: key '" + key + "' expects a list");
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, bool> seen;
    std::map<std::string, bool> required = {{"nu", false}, {"d", false},     {"alpha", false},
                                            {"theta", false}, {"L", false}, {"T", false},
                                            {"N", false},     {"M", false}};

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " has an empty key or value");
        if (seen[key])
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        seen[key] = true;
        if (required.count(key)) required[key] = true;

        if (key == "nu") cfg.params.nu = to_double(key, val);
        else if (key == "d") cfg.params.d = to_double(key, val);
        else if (key == "alpha") cfg.params.alpha = to_double(key, val);
        else if (key == "theta") cfg.params.theta = to_double(key, val);
        else if (key == "L") cfg.params.L = to_double(key, val);
        else if (key == "T") cfg.params.T = to_double(key, val);
        else if (key == "N") cfg.N = to_int(key, val);
        else if (key == "M") cfg.M = to_int(key, val);
        else if (key == "source") cfg.source.kind = to_kind(key, val);
        else if (key == "source_amplitude") cfg.source.amplitude = to_double(key, val);
        else if (key == "source_wavenumber") cfg.source.wavenumber = to_double(key, val);
        else if (key == "source_center") cfg.source.center = to_double(key, val);
        else if (key == "source_width") cfg.source.width = to_double(key, val);
        else if (key == "source_file") cfg.source.file = val;
        else if (key == "ic") cfg.ic.kind = to_kind(key, val);
        else if (key == "ic_amplitude") cfg.ic.amplitude = to_double(key, val);
        else if (key == "ic_wavenumber") cfg.ic.wavenumber = to_double(key, val);
        else if (key == "ic_center") cfg.ic.center = to_double(key, val);
        else if (key == "ic_width") cfg.ic.width = to_double(key, val);
        else if (key == "ic_file") cfg.ic.file = val;
        else if (key == "noise_level") cfg.noise.level = to_double(key, val);
        else if (key == "seed") cfg.noise.seed = to_u64(key, val);
        else if (key == "reg_order") cfg.reg_order = to_int(key, val);
        else if (key == "fixed_lambda") cfg.fixed_lambda = to_double(key, val);
        else if (key == "lambda_min") cfg.lambda_min = to_double(key, val);
        else if (key == "lambda_max") cfg.lambda_max = to_double(key, val);
        else if (key == "lambda_count") cfg.lambda_count = to_int(key, val);
        else if (key == "out_dir") cfg.out_dir = val;
        else if (key == "with_analytic") cfg.with_analytic = to_bool(key, val);
        else if (key == "refine") cfg.refine = to_bool(key, val);
        else if (key == "debug_identity_k") cfg.debug_identity_k = to_bool(key, val);
        else if (key == "k_max") cfg.k_max = to_double(key, val);
        else if (key == "n_k") cfg.n_k = to_int(key, val);
        else if (key == "x_pad") cfg.x_pad = to_double(key, val);
        else if (key == "perturb_modes") cfg.perturb_modes = to_int_list(key, val);
        else if (key == "perturb_amplitude") cfg.perturb_amplitude = to_double(key, val);
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    for (const auto& [key, present] : required)
        if (!present) throw std::invalid_argument("config: missing required key '" + key + "'");

    validate_params(cfg.params);
    if (cfg.noise.level < 0.0) throw std::invalid_argument("config: noise_level must be >= 0");
    if (cfg.lambda_count < 0) throw std::invalid_argument("config: lambda_count must be >= 0");
    if (cfg.reg_order != 0 && cfg.reg_order != 1)
        throw std::invalid_argument("config: reg_order must be 0 or 1");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot read file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------
// field sampling

namespace {

std::vector<double> load_table(const std::string& file, int expected) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("table: cannot read file " + file);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        vals.push_back(to_double("table entry", line));
    }
    if (int(vals.size()) != expected)
        throw std::invalid_argument("table: expected " + std::to_string(expected) +
                                    " values in " + file + ", got " +
                                    std::to_string(vals.size()));
    return vals;
}

}  // namespace

double FieldSpec::evaluate(double x, const Grid& g, double L) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Sine:
            return amplitude * std::sin(wavenumber * std::numbers::pi * x / L);
        case Kind::Gaussian:
            return amplitude * std::exp(-(x - center) * (x - center) / (2.0 * width * width));
        case Kind::Table:
            break;  // handled by continuous_field, which loads the file once
    }
    (void)g;
    throw std::logic_error("FieldSpec::evaluate: tabulated fields require continuous_field");
}

namespace {

// Continuous [0, L] evaluation with table files loaded once up front.
std::function<double(double)> continuous_field(const FieldSpec& fs, const Grid& g, double L) {
    if (fs.kind == FieldSpec::Kind::Table) {
        const auto vals = load_table(fs.file, g.interior());
        const int N = g.N;
        const double dx = g.dx;
        return [vals, N, dx, L](double x) {
            if (x <= 0.0 || x >= L) return 0.0;
            // piecewise linear through (x_i, v_i), zero at both boundaries
            const double s = x / dx;
            const int i = std::min(int(s), N - 1);
            const double frac = s - i;
            const double left = (i == 0) ? 0.0 : vals[std::size_t(i - 1)];
            const double right = (i == N - 1) ? 0.0 : vals[std::size_t(i)];
            return left + frac * (right - left);
        };
    }
    return [fs, g, L](double x) { return fs.evaluate(x, g, L); };
}

}  // namespace

Vector FieldSpec::sample(const Grid& g, double L) const {
    const int n = g.interior();
    Vector v(n);
    if (kind == Kind::Table) {
        const auto vals = load_table(file, n);
        for (int i = 0; i < n; ++i) v[i] = vals[i];
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = evaluate(L * double(i + 1) / double(g.N), g, L);
    return v;
}

// ---------------------------------------------------------------------
// commands

namespace {

SpectralConfig spectral_config(const RunConfig& cfg) {
    SpectralConfig sc = SpectralConfig::recommended(cfg.params, cfg.params.T, cfg.params.T);
    if (cfg.source.kind != FieldSpec::Kind::Zero) {
        // The time-integrated source kernel decays only like 1/(d|k|^alpha),
        // so size the truncation for a 1e-3 relative tail, keeping dk fixed.
        const double c = std::cos(cfg.params.theta * std::numbers::pi / 2.0);
        const double k_src =
            std::pow(1e3 / (cfg.params.d * c * cfg.params.T), 1.0 / cfg.params.alpha);
        if (k_src > sc.k_max) {
            int n_k = int(std::ceil(sc.n_k * k_src / sc.k_max));
            n_k = std::min(n_k + n_k % 2, 16384);
            sc.n_k = n_k;
            sc.k_max = k_src;
        }
    }
    if (cfg.k_max) sc.k_max = *cfg.k_max;
    if (cfg.n_k) sc.n_k = *cfg.n_k;
    sc.x_pad = cfg.x_pad;
    sc.validate();
    return sc;
}

RegularizationConfig regularization_config(const RunConfig& cfg, const Matrix& K,
                                           const Vector& Y) {
    RegularizationConfig reg;
    reg.order = cfg.reg_order;
    reg.fixed_lambda = cfg.fixed_lambda;
    if (cfg.lambda_min && cfg.lambda_max) {
        if (cfg.lambda_count < 1)
            throw std::invalid_argument("config: lambda grid is empty (lambda_count = 0)");
        reg.lambda_grid.resize(cfg.lambda_count);
        const double lo = std::log10(*cfg.lambda_min);
        const double hi = std::log10(*cfg.lambda_max);
        for (int i = 0; i < cfg.lambda_count; ++i)
            reg.lambda_grid[i] =
                cfg.lambda_count == 1
                    ? *cfg.lambda_min
                    : std::pow(10.0, lo + (hi - lo) * double(i) / double(cfg.lambda_count - 1));
    } else {
        if (cfg.lambda_count < 1)
            throw std::invalid_argument("config: lambda grid is empty (lambda_count = 0)");
        reg.lambda_grid = RegularizationConfig::default_lambda_grid(K, Y, cfg.lambda_count);
    }
    return reg;
}

struct ForwardRun {
    Grid grid;
    Vector x;
    Vector c_fd;
    Vector c_analytic;  // empty unless requested
    double discrepancy = 0.0;
};

ForwardRun run_forward_level(const RunConfig& cfg, int N, int M, bool want_analytic) {
    ForwardRun run{Grid::make(cfg.params, N, M), {}, {}, {}, 0.0};
    const Grid& g = run.grid;
    run.x = g.interior_nodes(cfg.params.L);
    const Vector r = cfg.source.sample(g, cfg.params.L);
    const Vector g0 = cfg.ic.sample(g, cfg.params.L);
    run.c_fd = solve_forward(cfg.params, g, g0, r).back();
    if (want_analytic) {
        const SpectralConfig sc = spectral_config(cfg);
        const auto f = continuous_field(cfg.source, g, cfg.params.L);
        const auto ic = continuous_field(cfg.ic, g, cfg.params.L);
        run.c_analytic = analytic_solution_grid(run.x, cfg.params.T, f, ic, cfg.params, sc);
        const double denom = run.c_analytic.norm();
        run.discrepancy =
            denom > 0.0 ? (run.c_fd - run.c_analytic).norm() / denom : run.c_fd.norm();
    }
    return run;
}

Matrix build_K(const RunConfig& cfg, const Grid& g) {
    if (cfg.debug_identity_k) return Matrix::Identity(g.interior(), g.interior());
    return assemble_forward_map(cfg.params, g).K;
}

}  // namespace

void cmd_forward(const RunConfig& cfg) {
    const bool want_analytic = cfg.with_analytic || cfg.refine;
    const ForwardRun base = run_forward_level(cfg, cfg.N, cfg.M, want_analytic);

    auto out = open_csv(cfg.out_dir, "forward.csv",
                        want_analytic ? "x,c_fd,c_analytic" : "x,c_fd");
    for (int i = 0; i < base.grid.interior(); ++i) {
        out << g17(base.x[i]) << "," << g17(base.c_fd[i]);
        if (want_analytic) out << "," << g17(base.c_analytic[i]);
        out << "\n";
    }
    log_info("forward: wrote forward.csv (" + std::to_string(base.grid.interior()) + " rows)");

    if (want_analytic) {
        auto meta = open_csv(cfg.out_dir, "forward_meta.csv", "N,M,l2_rel_discrepancy");
        meta << cfg.N << "," << cfg.M << "," << g17(base.discrepancy) << "\n";
        if (cfg.refine) {
            const ForwardRun fine = run_forward_level(cfg, 2 * cfg.N, 2 * cfg.M, true);
            meta << 2 * cfg.N << "," << 2 * cfg.M << "," << g17(fine.discrepancy) << "\n";
            log_debug("refinement discrepancies: " + g17(base.discrepancy) + " -> " +
                      g17(fine.discrepancy));
        }
    }
}

void cmd_invert(const RunConfig& cfg) {
    const Grid g = Grid::make(cfg.params, cfg.N, cfg.M);
    const Vector r_true = cfg.source.sample(g, cfg.params.L);
    const Matrix K = build_K(cfg, g);
    const Vector y_exact = K * r_true;
    const Vector y = add_noise(y_exact, cfg.noise);
    const Matrix D = difference_matrix(cfg.reg_order, g.interior(), g.dx);

    InversionResult result = run_inversion(K, y, D, regularization_config(cfg, K, y));
    result.relative_error_pct = relative_error(result.r_est, r_true);

    auto out = open_csv(cfg.out_dir, "invert.csv", "x,r_true,r_est");
    const Vector x = g.interior_nodes(cfg.params.L);
    for (int i = 0; i < g.interior(); ++i)
        out << g17(x[i]) << "," << g17(r_true[i]) << "," << g17(result.r_est[i]) << "\n";

    auto meta = open_csv(cfg.out_dir, "invert_meta.csv",
                         "lambda_used,residual,seminorm,relative_error_pct,seed,noise_level");
    meta << g17(result.lambda_used) << "," << g17(result.residual_norm) << ","
         << g17(result.solution_seminorm) << "," << g17(*result.relative_error_pct) << ","
         << cfg.noise.seed << "," << g17(cfg.noise.level) << "\n";
    log_info("invert: lambda = " + g17(result.lambda_used) +
             ", relative error = " + g17(*result.relative_error_pct) + "%");
}

void cmd_lcurve(const RunConfig& cfg) {
    const Grid g = Grid::make(cfg.params, cfg.N, cfg.M);
    const Vector r_true = cfg.source.sample(g, cfg.params.L);
    const Matrix K = build_K(cfg, g);
    const Vector y = add_noise(K * r_true, cfg.noise);
    const Matrix D = difference_matrix(cfg.reg_order, g.interior(), g.dx);

    RegularizationConfig reg = regularization_config(cfg, K, y);
    reg.fixed_lambda.reset();
    const LCurveResult res = l_curve_select(K, y, D, reg);
    if (res.degenerate) log_info("lcurve: degenerate curve, median lambda returned");

    auto out = open_csv(cfg.out_dir, "lcurve.csv", "lambda,residual_norm,seminorm,curvature,selected");
    for (std::size_t i = 0; i < res.curve.size(); ++i) {
        const auto& pt = res.curve[i];
        out << g17(pt.lambda) << "," << g17(pt.residual_norm) << "," << g17(pt.seminorm) << ","
            << g17(pt.curvature) << "," << (int(i) == res.selected_index ? 1 : 0) << "\n";
    }
    log_info("lcurve: selected lambda = " + g17(res.lambda));
}

void cmd_diagnose(const RunConfig& cfg) {
    const Grid g = Grid::make(cfg.params, cfg.N, cfg.M);
    Matrix K;
    ForwardMap fm;
    if (cfg.debug_identity_k) {
        K = Matrix::Identity(g.interior(), g.interior());
        fm = ForwardMap{K, Matrix::Identity(g.interior(), g.interior()), g, cfg.params};
    } else {
        fm = assemble_forward_map(cfg.params, g);
        K = fm.K;
    }

    const Vector sigma = svd_spectrum(K);
    auto svd_out = open_csv(cfg.out_dir, "svd.csv", "index,sigma");
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        svd_out << i << "," << g17(sigma[i]) << "\n";

    const auto decay = perturbation_decay_test(fm, cfg.perturb_amplitude, cfg.perturb_modes);
    auto pert_out = open_csv(cfg.out_dir, "perturb.csv", "n,input_norm,output_norm");
    for (const auto& pt : decay)
        pert_out << pt.mode << "," << g17(pt.input_norm) << "," << g17(pt.output_norm) << "\n";

    if (cfg.with_analytic) {
        // Green kernel profile over [-x_pad, L + x_pad] at the final time.
        const SpectralConfig sc = spectral_config(cfg);
        auto green_out = open_csv(cfg.out_dir, "green.csv", "x,G");
        const int n_pad = int(std::ceil(cfg.x_pad / g.dx));
        for (int i = -n_pad; i <= g.N + n_pad; ++i) {
            const double x = i * g.dx;
            green_out << g17(x) << "," << g17(green_eval(x, cfg.params.T, cfg.params, sc)) << "\n";
        }
    }
    log_info("diagnose: wrote svd.csv, perturb.csv (sigma_max/sigma_min = " +
             g17(sigma[0] / sigma[sigma.size() - 1]) + ")");
}

}  // namespace fade::cli
