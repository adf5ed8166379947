#ifndef SPECPOLY_EXPERIMENT_HPP
#define SPECPOLY_EXPERIMENT_HPP

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "specpoly/approximant.hpp"
#include "specpoly/graph.hpp"
#include "specpoly/lanczos.hpp"
#include "specpoly/matrix_market.hpp"

namespace specpoly {

using ScalarFn = std::function<double(double)>;

/// Named scalar functions usable from the CLI. Arbitrary expressions are out
/// of scope; new functions are added here as presets.
inline const std::map<std::string, ScalarFn>& function_registry()
{
    static const std::map<std::string, ScalarFn> reg = {
        {"exp-neg", [](double x) { return std::exp(-x); }},
        {"identity", [](double x) { return x; }},
    };
    return reg;
}

inline ScalarFn lookup_function(const std::string& name)
{
    const auto it = function_registry().find(name);
    if (it == function_registry().end())
        throw std::invalid_argument("unknown function preset: " + name);
    return it->second;
}

enum class Method { Chebyshev, InterpAdapted, LsAdapted, Lanczos };

inline const char* method_name(Method m)
{
    switch (m) {
        case Method::Chebyshev: return "chebyshev";
        case Method::InterpAdapted: return "interp-adapted";
        case Method::LsAdapted: return "ls-adapted";
        case Method::Lanczos: return "lanczos";
    }
    return "?";
}

constexpr Method kAllMethods[] = {Method::Chebyshev, Method::InterpAdapted,
                                  Method::LsAdapted, Method::Lanczos};

/// How a named matrix preset is constructed from its source.
enum class MatrixRecipe {
    Generate,   // seeded G(n,p) Laplacian, no file needed
    AsIs,       // file already symmetric
    Symmetrize, // (A + A^T)/2
    Laplacian,  // graph Laplacian from off-diagonal magnitudes
};

struct PresetSpec {
    MatrixRecipe recipe;
    double default_scale = 1.0;
};

inline const std::map<std::string, PresetSpec>& matrix_presets()
{
    static const std::map<std::string, PresetSpec> p = {
        {"gnp", {MatrixRecipe::Generate}},
        {"minnesota", {MatrixRecipe::Laplacian}},
        {"net25", {MatrixRecipe::Laplacian}},
        {"si2", {MatrixRecipe::AsIs}},
        {"cage9", {MatrixRecipe::Symmetrize}},
        {"saylr4", {MatrixRecipe::Laplacian}},
        {"saylr4-scaled", {MatrixRecipe::Laplacian, 1.0 / 2000.0}},
    };
    return p;
}

struct ExperimentConfig {
    // matrix source: either a preset name, or a raw file path
    std::string preset;
    std::string matrix_path;
    bool symmetrize = false; // raw-file mode only
    std::size_t gnp_n = 500;
    double gnp_p = 0.2;
    double scale = 1.0;

    std::string fn = "exp-neg";
    std::vector<std::size_t> degrees = default_degrees();

    std::size_t T = 10;
    std::size_t J = 10;
    std::size_t K_theta = 30;
    std::size_t M = 2000;
    std::uint64_t seed = 0;

    std::size_t eig_errors_at = 10;
    bool timing = true;
    std::string out_dir = ".";
    std::string cdf_cache;

    static std::vector<std::size_t> default_degrees()
    {
        std::vector<std::size_t> d;
        for (std::size_t k = 3; k <= 25; ++k) d.push_back(k);
        return d;
    }

    void validate() const
    {
        if (degrees.empty()) throw std::invalid_argument("config: degrees must be nonempty");
        for (std::size_t k : degrees)
            if (k < 1) throw std::invalid_argument("config: degrees must be >= 1");
        if (T < 2 || J < 1 || K_theta < 1 || M < 2)
            throw std::invalid_argument("config: T, J, K_theta, M must be positive (T >= 2, M >= 2)");
        if (scale == 0.0) throw std::invalid_argument("config: scale must be nonzero");
    }
};

/// Build the operator described by the config (preset recipe or raw file),
/// with the scale factor applied.
inline SparseSymMatrix build_matrix(const ExperimentConfig& cfg)
{
    double scale = cfg.scale;
    SparseSymMatrix a;
    if (!cfg.preset.empty()) {
        const auto it = matrix_presets().find(cfg.preset);
        if (it == matrix_presets().end())
            throw std::invalid_argument("unknown preset: " + cfg.preset);
        const PresetSpec& spec = it->second;
        scale *= spec.default_scale;
        switch (spec.recipe) {
            case MatrixRecipe::Generate:
                a = gen_erdos_renyi_laplacian(cfg.gnp_n, cfg.gnp_p, cfg.seed);
                break;
            case MatrixRecipe::AsIs:
            case MatrixRecipe::Symmetrize:
            case MatrixRecipe::Laplacian: {
                if (cfg.matrix_path.empty())
                    throw std::invalid_argument("preset '" + cfg.preset +
                                                "' needs --matrix with the matrix file path");
                const bool symmetrize = spec.recipe != MatrixRecipe::AsIs;
                a = load_matrix_market(cfg.matrix_path, symmetrize);
                if (spec.recipe == MatrixRecipe::Laplacian) a = laplacian_from_offdiagonal(a);
                break;
            }
        }
    } else {
        if (cfg.matrix_path.empty())
            throw std::invalid_argument("either --preset or --matrix is required");
        a = load_matrix_market(cfg.matrix_path, cfg.symmetrize);
    }
    return scale == 1.0 ? a : a.scaled(scale);
}

/// b = V 1, the sum of the eigenvector columns. In the spectral domain this
/// b has unit weight on every eigenvalue, which makes the squared relative
/// error of p(A)b equal to sum_l (f - p)^2(lambda_l) / sum_l f^2(lambda_l).
inline Vector make_b_spectral_ones(const EigenDecomposition& eig)
{
    Vector b(eig.n, 0.0);
    for (std::size_t i = 0; i < eig.n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < eig.n; ++k) s += eig.vec(i, k);
        b[i] = s;
    }
    return b;
}

/// Desk-scale oracle: f(A)b evaluated literally as V f(Lambda) V^T b.
template <typename F>
Vector exact_fAb(const SparseSymMatrix& a, F&& f, const Vector& b)
{
    return dense_sym_eig(a).apply_function(f, b);
}

/// Equal-weight least-squares fit at known eigenvalues (the oracle-informed
/// reference). Repeated eigenvalues are merged into one abscissa carrying
/// their multiplicity as weight, which leaves the minimizer unchanged.
template <typename F>
PolyApproximant discrete_ls_at_eigenvalues(const Vector& eigs, F&& f, std::size_t K)
{
    if (eigs.empty()) throw std::invalid_argument("discrete_ls_at_eigenvalues: no eigenvalues");
    Vector sorted = eigs;
    std::sort(sorted.begin(), sorted.end());
    const double tol = 1e-10 * std::max(1.0, std::abs(sorted.back() - sorted.front()));

    DiscreteMeasure mu;
    for (double v : sorted) {
        if (!mu.x.empty() && v - mu.x.back() <= tol) {
            mu.w.back() += 1.0;
        } else {
            mu.x.push_back(v);
            mu.w.push_back(1.0);
        }
    }
    if (mu.x.size() < K + 1)
        throw std::invalid_argument("discrete_ls_at_eigenvalues: fewer distinct eigenvalues than K+1");
    const OrthoBasis basis = stieltjes_basis(std::move(mu), K);
    return ortho_expand(f, basis, K);
}

struct MethodRow {
    Method method;
    std::size_t K = 0;
    double rel_err = 0.0;       // ||f(A)b - p(A)b||^2 / ||f(A)b||^2
    double eig_max_err = 0.0;   // max_l |f - p|(lambda_l)
    double interval_sup_err = 0.0;
    long matvecs = 0;
    double wall_ms = 0.0;
};

struct ExperimentResult {
    SpectralInterval interval;
    Vector eigenvalues;
    std::vector<MethodRow> rows;
    std::size_t eig_errors_at = 0;
    // per-eigenvalue |f - p| at the designated degree, one column per method
    std::vector<std::array<double, 4>> eig_errors;
    std::string errors_csv_path;
    std::string eig_errors_csv_path;
};

namespace detail {

inline void csv_double(std::string& line, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}

// One method at one degree: the applied vector plus a scalar evaluator for
// the underlying polynomial (for the Lanczos method that is the interpolant
// of f at the Ritz values).
struct BuiltMethod {
    Vector applied;
    PolyApproximant scalar_form;
    long matvecs = 0;
};

template <typename F>
BuiltMethod build_method(Method method, std::size_t K, const SparseSymMatrix& a, const Vector& b,
                         F&& f, SpectralInterval interval, const SpectralCDF& cdf,
                         const OrthoBasis& basis, const OrthoExpansion& full_ls)
{
    CountingMatrix counted(a);
    BuiltMethod out;
    switch (method) {
        case Method::Chebyshev: {
            ChebySeries full = cheby_truncated(f, interval, K);
            out.scalar_form = full;
            out.applied = cheby_apply(full, counted, b);
            break;
        }
        case Method::InterpAdapted: {
            const Vector nodes = warped_nodes(cdf, K);
            NewtonInterp p = newton_interpolant(nodes, f);
            out.scalar_form = p;
            out.applied = newton_apply(p, counted, b);
            break;
        }
        case Method::LsAdapted: {
            (void)basis;
            OrthoExpansion ex;
            ex.alpha.assign(full_ls.alpha.begin(), full_ls.alpha.begin() + static_cast<long>(K));
            ex.beta.assign(full_ls.beta.begin(), full_ls.beta.begin() + static_cast<long>(K));
            ex.gamma.assign(full_ls.gamma.begin(), full_ls.gamma.begin() + static_cast<long>(K + 1));
            out.scalar_form = ex;
            out.applied = ortho_apply(ex, counted, b);
            break;
        }
        case Method::Lanczos: {
            const LanczosFactorization fac = lanczos_factor(counted, b, K, true);
            const EigenDecomposition td = symtridiag_eig(fac.alpha, fac.gamma);
            out.applied = lanczos_combine(fac, td, f);
            // the Lanczos approximation equals q_K(A)b where q_K interpolates
            // f at the Ritz values
            out.scalar_form = newton_interpolant(td.eigenvalues, f);
            break;
        }
    }
    out.matvecs = counted.count();
    return out;
}

} // namespace detail

/// Run the full benchmark pipeline: build the operator, take the dense
/// oracle eigendecomposition, set b = V1, estimate the spectral CDF once,
/// then for every degree and method compute p_K(A)b with its error metrics.
/// Writes errors_vs_K.csv and eigenvalue_errors_K<k>.csv under cfg.out_dir,
/// flushing rows as they are produced. Deterministic for a fixed seed
/// (wall-clock milliseconds excepted; pass timing=false to zero them).
inline ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    const ScalarFn f = lookup_function(cfg.fn);
    const SparseSymMatrix a = build_matrix(cfg);

    const EigenDecomposition eig = dense_sym_eig(a);
    const Vector b = make_b_spectral_ones(eig);
    const Vector fAb = eig.apply_function(f, b);
    const double fAb_norm2 = detail::dot(fAb, fAb);

    ExperimentResult res;
    res.interval = widen_if_degenerate({eig.eigenvalues.front(), eig.eigenvalues.back()});
    res.eigenvalues = eig.eigenvalues;
    res.eig_errors_at = cfg.eig_errors_at;

    // spectral CDF: reuse a cached fit when present, estimate otherwise
    SpectralCDF cdf;
    bool have_cdf = false;
    if (!cfg.cdf_cache.empty() && std::filesystem::exists(cfg.cdf_cache)) {
        std::ifstream in(cfg.cdf_cache);
        nlohmann::json j;
        in >> j;
        cdf = SpectralCDF::from_json(j);
        have_cdf = true;
    }
    if (!have_cdf) {
        const EigCountEstimate counts =
            estimate_counts(a, res.interval, cfg.T, cfg.J, cfg.K_theta, cfg.seed);
        cdf = fit_cdf(counts, a.n(), res.interval);
        if (!cfg.cdf_cache.empty()) {
            std::ofstream out(cfg.cdf_cache);
            out << cdf.to_json().dump(2) << "\n";
        }
    }

    // shared basis for the weighted-LS method, at the largest degree needed
    std::vector<std::size_t> degrees = cfg.degrees;
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    const std::size_t K_max = std::max(degrees.back(), cfg.eig_errors_at);

    const SpectralInterval cdf_iv{cdf.lo(), cdf.hi()};
    const DiscreteMeasure measure = build_measure(cdf, cdf_iv, cfg.M);
    const OrthoBasis basis = stieltjes_basis(measure, K_max);
    const OrthoExpansion full_ls = ortho_expand(f, basis, K_max);

    // sup-error sample grid: uniform points plus the eigenvalues themselves
    Vector grid;
    grid.reserve(10001 + eig.n);
    for (std::size_t i = 0; i <= 10000; ++i)
        grid.push_back(res.interval.lo + res.interval.width() * static_cast<double>(i) / 10000.0);
    grid.insert(grid.end(), eig.eigenvalues.begin(), eig.eigenvalues.end());

    std::filesystem::create_directories(cfg.out_dir);
    res.errors_csv_path = (std::filesystem::path(cfg.out_dir) / "errors_vs_K.csv").string();
    std::ofstream csv(res.errors_csv_path);
    if (!csv) throw std::runtime_error("cannot write " + res.errors_csv_path);
    csv << "method,K,rel_err,eig_max_err,interval_sup_err,matvecs,wall_ms\n" << std::flush;

    for (const Method method : kAllMethods) {
        for (const std::size_t K : degrees) {
            const auto t0 = std::chrono::steady_clock::now();
            const detail::BuiltMethod built =
                detail::build_method(method, K, a, b, f, res.interval, cdf, basis, full_ls);
            const auto t1 = std::chrono::steady_clock::now();

            MethodRow row;
            row.method = method;
            row.K = K;
            row.matvecs = built.matvecs;
            row.wall_ms = cfg.timing
                              ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                              : 0.0;

            double diff2 = 0.0;
            for (std::size_t i = 0; i < fAb.size(); ++i) {
                const double d = fAb[i] - built.applied[i];
                diff2 += d * d;
            }
            row.rel_err = diff2 / fAb_norm2;

            for (double lam : eig.eigenvalues)
                row.eig_max_err =
                    std::max(row.eig_max_err, std::abs(f(lam) - eval_scalar(built.scalar_form, lam)));
            for (double z : grid)
                row.interval_sup_err =
                    std::max(row.interval_sup_err, std::abs(f(z) - eval_scalar(built.scalar_form, z)));

            res.rows.push_back(row);
            std::string line = method_name(method);
            line += ",";
            line += std::to_string(K);
            for (double v : {row.rel_err, row.eig_max_err, row.interval_sup_err}) {
                line += ",";
                detail::csv_double(line, v);
            }
            line += "," + std::to_string(row.matvecs) + ",";
            detail::csv_double(line, row.wall_ms);
            csv << line << "\n" << std::flush;
        }
    }

    // per-eigenvalue error table at the designated degree
    res.eig_errors.resize(eig.n);
    {
        std::array<PolyApproximant, 4> forms;
        for (std::size_t mi = 0; mi < 4; ++mi)
            forms[mi] = detail::build_method(kAllMethods[mi], cfg.eig_errors_at, a, b, f,
                                             res.interval, cdf, basis, full_ls)
                            .scalar_form;
        for (std::size_t l = 0; l < eig.n; ++l) {
            const double lam = eig.eigenvalues[l];
            for (std::size_t mi = 0; mi < 4; ++mi)
                res.eig_errors[l][mi] = std::abs(f(lam) - eval_scalar(forms[mi], lam));
        }
    }
    res.eig_errors_csv_path =
        (std::filesystem::path(cfg.out_dir) /
         ("eigenvalue_errors_K" + std::to_string(cfg.eig_errors_at) + ".csv"))
            .string();
    std::ofstream ecsv(res.eig_errors_csv_path);
    if (!ecsv) throw std::runtime_error("cannot write " + res.eig_errors_csv_path);
    ecsv << "lambda,abs_err_chebyshev,abs_err_interp,abs_err_ls,abs_err_lanczos\n";
    for (std::size_t l = 0; l < eig.n; ++l) {
        std::string line;
        detail::csv_double(line, eig.eigenvalues[l]);
        for (std::size_t mi = 0; mi < 4; ++mi) {
            line += ",";
            detail::csv_double(line, res.eig_errors[l][mi]);
        }
        ecsv << line << "\n";
    }
    return res;
}

} // namespace specpoly

#endif
