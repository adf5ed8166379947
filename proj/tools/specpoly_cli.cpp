// Command-line front end: generate test graphs, estimate spectral CDFs,
// run single f(A)b approximations, and reproduce the full benchmark.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "specpoly/specpoly.hpp"

namespace {

using namespace specpoly;

struct MatrixFlags {
    ExperimentConfig cfg; // reuse the config struct for source fields
    std::vector<double> interval_override;

    void attach(CLI::App* cmd, bool with_scale = true)
    {
        cmd->add_option("--matrix", cfg.matrix_path, "Matrix Market file path");
        cmd->add_option("--preset", cfg.preset,
                        "named matrix preset (gnp, minnesota, net25, si2, cage9, saylr4, "
                        "saylr4-scaled); file presets still need --matrix");
        cmd->add_flag("--symmetrize", cfg.symmetrize, "use (A+A^T)/2 for a raw general file");
        cmd->add_option("--gnp-n", cfg.gnp_n, "gnp preset: vertex count");
        cmd->add_option("--gnp-p", cfg.gnp_p, "gnp preset: edge probability");
        if (with_scale) cmd->add_option("--scale", cfg.scale, "scalar multiplier applied to A");
        cmd->add_option("--seed", cfg.seed, "64-bit seed for generators and probe vectors");
        cmd->add_option("--interval", interval_override,
                        "exact spectral bounds lo hi (skips the Lanczos estimate)")
            ->expected(2);
    }

    SpectralInterval interval_for(const SparseSymMatrix& a) const
    {
        if (!interval_override.empty())
            return widen_if_degenerate({interval_override[0], interval_override[1]});
        const std::size_t iters = std::max<std::size_t>(30, 2 * cfg.K_theta);
        return spectral_interval(a, 0.01, iters, cfg.seed);
    }
};

std::vector<std::size_t> parse_degrees(const std::string& spec)
{
    std::vector<std::size_t> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const std::size_t lo = std::stoul(spec.substr(0, dots));
        const std::size_t hi = std::stoul(spec.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--degrees", "range must be nondecreasing");
        for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        out.push_back(std::stoul(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

SpectralCDF obtain_cdf(const SparseSymMatrix& a, SpectralInterval iv, const ExperimentConfig& cfg)
{
    if (!cfg.cdf_cache.empty() && std::filesystem::exists(cfg.cdf_cache)) {
        std::ifstream in(cfg.cdf_cache);
        nlohmann::json j;
        in >> j;
        return SpectralCDF::from_json(j);
    }
    const EigCountEstimate counts = estimate_counts(a, iv, cfg.T, cfg.J, cfg.K_theta, cfg.seed);
    SpectralCDF cdf = fit_cdf(counts, a.n(), iv);
    if (!cfg.cdf_cache.empty()) {
        std::ofstream out(cfg.cdf_cache);
        out << cdf.to_json().dump(2) << "\n";
    }
    return cdf;
}

void write_vector(const Vector& v, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        out << buf;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spectrum-adapted polynomial approximation of f(A)b"};
    app.require_subcommand(1);

    // ---- gen-graph ----------------------------------------------------
    auto* gen = app.add_subcommand("gen-graph", "write the Laplacian of a seeded G(n,p) graph");
    std::size_t gen_n = 500;
    double gen_p = 0.2;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "graph.mtx";
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--p", gen_p, "edge probability")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output Matrix Market path");

    // ---- estimate-cdf -------------------------------------------------
    auto* est = app.add_subcommand("estimate-cdf", "estimate the cumulative spectral density");
    MatrixFlags est_m;
    est_m.attach(est);
    est->add_option("--T", est_m.cfg.T, "threshold count");
    est->add_option("--J", est_m.cfg.J, "probe vector count");
    est->add_option("--ktheta", est_m.cfg.K_theta, "step filter degree");
    std::string est_out;
    est->add_option("--cdf-cache", est_m.cfg.cdf_cache, "write (or reuse) the fitted CDF here");
    est->add_option("--out", est_out, "also write the CDF JSON to this path");

    // ---- approx ---------------------------------------------------------
    auto* ap = app.add_subcommand("approx", "single f(A)b approximation, writes the vector");
    MatrixFlags ap_m;
    ap_m.attach(ap);
    std::string ap_method = "ls-adapted";
    std::size_t ap_degree = 10;
    std::string ap_out = "fAb.txt";
    std::string ap_b_path;
    ap->add_option("--fn", ap_m.cfg.fn, "function preset (exp-neg)");
    ap->add_option("--method", ap_method, "chebyshev | interp-adapted | ls-adapted | lanczos");
    ap->add_option("--degree", ap_degree, "polynomial degree K");
    ap->add_option("--T", ap_m.cfg.T, "threshold count");
    ap->add_option("--J", ap_m.cfg.J, "probe vector count");
    ap->add_option("--ktheta", ap_m.cfg.K_theta, "step filter degree");
    ap->add_option("--M", ap_m.cfg.M, "least-squares abscissa count");
    ap->add_option("--cdf-cache", ap_m.cfg.cdf_cache, "reuse/store the fitted CDF");
    ap->add_option("--b", ap_b_path, "vector file (one value per line); default all-ones");
    ap->add_option("--out", ap_out, "output vector path");

    // ---- bench ----------------------------------------------------------
    auto* be = app.add_subcommand("bench", "full error benchmark against the dense oracle");
    MatrixFlags be_m;
    be_m.attach(be);
    std::string be_degrees = "3..25";
    be->add_option("--fn", be_m.cfg.fn, "function preset (exp-neg)");
    be->add_option("--degrees", be_degrees, "degree list: 'a..b' or comma separated");
    be->add_option("--T", be_m.cfg.T, "threshold count");
    be->add_option("--J", be_m.cfg.J, "probe vector count");
    be->add_option("--ktheta", be_m.cfg.K_theta, "step filter degree");
    be->add_option("--M", be_m.cfg.M, "least-squares abscissa count");
    be->add_option("--out", be_m.cfg.out_dir, "output directory for the CSV files");
    be->add_option("--cdf-cache", be_m.cfg.cdf_cache, "reuse/store the fitted CDF");
    be->add_option("--eig-errors-at", be_m.cfg.eig_errors_at,
                   "degree for the per-eigenvalue error table");
    bool no_timing = false;
    be->add_flag("--no-timing", no_timing, "write wall_ms as 0 for byte-reproducible output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const SparseSymMatrix a = gen_erdos_renyi_laplacian(gen_n, gen_p, gen_seed);
            save_matrix_market(a, gen_out);
            std::cout << "wrote " << gen_out << " (n=" << a.n() << ", nnz=" << a.nnz() << ")\n";
        } else if (*est) {
            if (est_m.cfg.cdf_cache.empty() && est_out.empty())
                throw std::runtime_error("estimate-cdf: pass --cdf-cache or --out");
            const SparseSymMatrix a = build_matrix(est_m.cfg);
            const SpectralInterval iv = est_m.interval_for(a);
            const SpectralCDF cdf = obtain_cdf(a, iv, est_m.cfg);
            if (!est_out.empty()) {
                std::ofstream out(est_out);
                out << cdf.to_json().dump(2) << "\n";
            }
            std::cout << "estimated CDF on [" << iv.lo << ", " << iv.hi << "] with "
                      << cdf.knots().size() << " knots\n";
        } else if (*ap) {
            const SparseSymMatrix a = build_matrix(ap_m.cfg);
            const ScalarFn f = lookup_function(ap_m.cfg.fn);
            Vector b(a.n(), 1.0);
            if (!ap_b_path.empty()) {
                std::ifstream in(ap_b_path);
                if (!in) throw std::runtime_error("cannot read " + ap_b_path);
                b.clear();
                double v;
                while (in >> v) b.push_back(v);
                if (b.size() != a.n()) throw std::runtime_error("--b: wrong vector length");
            }
            const SpectralInterval iv = ap_m.interval_for(a);
            Vector y;
            if (ap_method == "chebyshev") {
                y = cheby_apply(cheby_truncated(f, iv, ap_degree), a, b);
            } else if (ap_method == "lanczos") {
                y = lanczos_fAb(a, b, ap_degree, f);
            } else if (ap_method == "interp-adapted" || ap_method == "ls-adapted") {
                const SpectralCDF cdf = obtain_cdf(a, iv, ap_m.cfg);
                if (ap_method == "interp-adapted") {
                    y = newton_apply(newton_interpolant(warped_nodes(cdf, ap_degree), f), a, b);
                } else {
                    const DiscreteMeasure mu = build_measure(cdf, {cdf.lo(), cdf.hi()}, ap_m.cfg.M);
                    const OrthoBasis basis = stieltjes_basis(mu, ap_degree);
                    y = ortho_apply(ortho_expand(f, basis, ap_degree), a, b);
                }
            } else {
                throw std::runtime_error("unknown method: " + ap_method);
            }
            write_vector(y, ap_out);
            std::cout << "wrote " << ap_out << "\n";
        } else if (*be) {
            be_m.cfg.degrees = parse_degrees(be_degrees);
            be_m.cfg.timing = !no_timing;
            const ExperimentResult res = run_experiment(be_m.cfg);
            std::cout << "wrote " << res.errors_csv_path << " and " << res.eig_errors_csv_path
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
