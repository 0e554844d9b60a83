#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "outbreak/batch.hpp"
#include "outbreak/equilibrium.hpp"
#include "outbreak/error.hpp"
#include "outbreak/io.hpp"
#include "outbreak/normal_form.hpp"
#include "outbreak/stats.hpp"
#include "outbreak/sweep.hpp"

namespace fs = std::filesystem;
using namespace outbreak;
using nlohmann::json;

namespace {

struct ParamOptions {
    std::string file;
    std::optional<double> beta, d, h, eps, sigma1, sigma2, sigma;
    bool allow_large_eps{false};

    void attach(CLI::App* app)
    {
        app->add_option("--params", file, "JSON parameter file (nondimensional or dimensional keys)")
            ->check(CLI::ExistingFile);
        app->add_option("--beta", beta);
        app->add_option("--d", d);
        app->add_option("--h", h, "bifurcation parameter");
        app->add_option("--eps", eps);
        app->add_option("--sigma1", sigma1);
        app->add_option("--sigma2", sigma2);
        app->add_option("--sigma", sigma, "total noise, split equally: sigma_i = sigma / sqrt(2)")
            ->excludes("--sigma1")
            ->excludes("--sigma2");
        app->add_flag("--allow-large-eps", allow_large_eps, "warn instead of failing when eps > 0.1");
    }

    NondimParams resolve() const
    {
        const EpsPolicy policy = allow_large_eps ? EpsPolicy::warn : EpsPolicy::enforce;
        NondimParams p = file.empty() ? reference_params() : load_params(file, policy);
        if (beta) p.beta = *beta;
        if (d) p.d = *d;
        if (h) p.h = *h;
        if (eps) p.eps = *eps;
        if (sigma1) p.sigma1 = *sigma1;
        if (sigma2) p.sigma2 = *sigma2;
        if (sigma) std::tie(p.sigma1, p.sigma2) = split_sigma(*sigma);
        validate(p, policy);
        return p;
    }
};

struct ThresholdOptions {
    std::optional<double> m_t, a_t, a_t_prime;

    void attach(CLI::App* app)
    {
        app->add_option("--m-t", m_t, "peak threshold for an LAO");
        app->add_option("--a-t", a_t, "SAO amplitude floor and segmentation hysteresis");
        app->add_option("--a-t-prime", a_t_prime, "LAO amplitude floor");
    }

    Thresholds resolve(Thresholds th) const
    {
        if (m_t) th.m_t = *m_t;
        if (a_t) th.a_t = *a_t;
        if (a_t_prime) th.a_t_prime = *a_t_prime;
        validate(th);
        return th;
    }
};

std::optional<Vec2> parse_pair(const std::string& text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    std::istringstream is(text);
    Vec2 v{};
    char comma = 0;
    if (!(is >> v[0] >> comma >> v[1]) || comma != ',') {
        throw InvalidParameter("expected a pair 'a,b', got '" + text + "'");
    }
    return v;
}

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream os(path);
    if (!os) {
        throw InvalidParameter("cannot write " + path.string());
    }
    return os;
}

std::string complex_str(std::complex<double> z)
{
    std::ostringstream os;
    os << std::setprecision(6) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

// ---- analyze --------------------------------------------------------------

int run_analyze(const NondimParams& p, const std::string& csv)
{
    const Equilibrium eq = solve_equilibrium(p);
    const HopfData hd = hopf_data(p);
    const JacobianSummary j = jacobian_summary(p, eq);
    std::vector<std::pair<std::string, std::string>> rows;
    auto num = [](double v) {
        std::ostringstream os;
        os << std::setprecision(10) << v;
        return os.str();
    };
    rows.emplace_back("alpha", num(eq.alpha));
    rows.emplace_back("alpha_star", num(hd.alpha_star));
    rows.emplace_back("h_star", num(hd.h_star));
    rows.emplace_back("h_tilde", num(hd.h_tilde));
    rows.emplace_back("delta", num(hd.delta));
    rows.emplace_back("gamma", num(hd.gamma));
    rows.emplace_back("mu", num(hd.mu));
    rows.emplace_back("regime", std::string(to_string(classify_regime(p))));
    rows.emplace_back("trace", num(j.trace));
    rows.emplace_back("det", num(j.determinant));
    rows.emplace_back("eigenvalue1", complex_str(j.lambda1));
    rows.emplace_back("eigenvalue2", complex_str(j.lambda2));

    std::size_t width = 0;
    for (const auto& r : rows) {
        width = std::max(width, r.first.size());
    }
    for (const auto& [k, v] : rows) {
        std::cout << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
    }
    if (!csv.empty()) {
        std::ofstream os = open_out(csv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            os << rows[i].first << (i + 1 < rows.size() ? "," : "\n");
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            os << rows[i].second << (i + 1 < rows.size() ? "," : "\n");
        }
    }
    return 0;
}

// ---- simulate / nf --simulate ----------------------------------------------

struct SimOptions {
    double dt{1e-3};
    double t_end{500.0};
    std::uint64_t seed{1};
    std::size_t seeds{1};
    std::size_t stride{10};
    std::string initial;
    std::string out{"trajectory.csv"};
    bool per_seed{false};
    bool euler{false};

    void attach(CLI::App* app, bool with_scheme)
    {
        app->add_option("--dt", dt)->check(CLI::PositiveNumber);
        app->add_option("--t-end", t_end)->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "first seed; path i uses seed + i");
        app->add_option("--seeds", seeds, "number of paths")->check(CLI::PositiveNumber);
        app->add_option("--stride", stride, "record every stride-th step")->check(CLI::PositiveNumber);
        app->add_option("--initial", initial, "initial state 'a,b' (default: the equilibrium)");
        app->add_option("--out", out, "CSV file, or directory with --per-seed");
        app->add_flag("--per-seed", per_seed, "one file per seed instead of a seed column");
        if (with_scheme) {
            app->add_flag("--euler", euler, "Euler-Maruyama instead of Milstein");
        }
    }
};

template <class PathFn>
int write_paths(const SimOptions& o, PathFn&& make)
{
    std::vector<Trajectory> paths(o.seeds);
    const auto n = static_cast<std::int64_t>(o.seeds);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        paths[static_cast<std::size_t>(i)] = make(o.seed + static_cast<std::uint64_t>(i));
    }
    std::size_t clamps = 0;
    for (const auto& t : paths) {
        clamps += t.clamp_events;
        if (t.status != PathStatus::ok) {
            std::cerr << "warning: seed " << t.seed << " stopped: " << to_string(t.status) << '\n';
        }
    }
    if (o.per_seed) {
        fs::create_directories(o.out);
        for (const auto& t : paths) {
            std::ofstream os = open_out(fs::path(o.out) / ("seed_" + std::to_string(t.seed) + ".csv"));
            write_trajectory_csv(os, t);
        }
    } else {
        std::ofstream os = open_out(o.out);
        const bool with_seed = paths.size() > 1;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            write_trajectory_csv(os, paths[i], with_seed, i == 0);
        }
    }
    std::cerr << "wrote " << paths.size() << " path(s) to " << o.out << "; clamp events: " << clamps
              << '\n';
    return 0;
}

int run_simulate(const NondimParams& p, const SimOptions& o, bool normal_form)
{
    if (normal_form) {
        const StochNFCoeffs c = stoch_nf_coeffs(p);
        const Vec2 start = parse_pair(o.initial).value_or([&] {
            const Equilibrium eq = solve_equilibrium(p);
            const NfPoint q = transform_to_nf({eq.x, eq.y}, c.k);
            return Vec2{q.l, q.z};
        }());
        return write_paths(o, [&](std::uint64_t seed) {
            return stochastic_nf_path(c, {o.dt, o.t_end, seed, o.stride, start});
        });
    }
    const Vec2 start = parse_pair(o.initial).value_or([&] {
        const Equilibrium eq = solve_equilibrium(p);
        return Vec2{eq.x, eq.y};
    }());
    const Scheme scheme = o.euler ? Scheme::euler_maruyama : Scheme::milstein;
    return write_paths(o, [&](std::uint64_t seed) {
        return milstein_path(p, {o.dt, o.t_end, seed, o.stride, start}, scheme);
    });
}

int run_nf(const NondimParams& p, double a, double c0, bool time_weighted)
{
    const StochNFCoeffs c = stoch_nf_coeffs(p);
    const NFConstants& k = c.k;
    auto line = [](const char* name, double v) {
        std::cout << std::left << std::setw(14) << name << std::setprecision(10) << v << '\n';
    };
    line("alpha_star", k.alpha_star);
    line("delta", k.delta);
    line("gamma", k.gamma);
    line("mu", k.mu);
    line("c1", k.c1);
    line("y_star", k.y_star);
    line("sigma_hat1", c.sigma_hat1);
    line("sigma_hat2", c.sigma_hat2);
    line("mu_hat", c.mu_hat);
    const SpikeProbability sp = repeated_spike_probability(c);
    line("kappa", sp.kappa);
    line("phi_neg_kappa", sp.prob);
    if (sp.zero_noise) {
        std::cout << "(zero noise: deterministic limit)\n";
        return 0;
    }
    try {
        const SpikeEstimate est = spike_estimate(
            c, a, c0, 0.0, time_weighted ? LinearNoise::time_weighted : LinearNoise::constant);
        line("P", est.moments.P);
        line("T", est.moments.T);
        line("Z_T_mean", est.moments.mean_exact);
        line("Z_T_var", est.moments.var_exact);
        line("Z_T_var_bound", est.moments.var_bound);
    } catch (const UndefinedScale& e) {
        std::cout << "(moments undefined: " << e.what() << ")\n";
    }
    return 0;
}

// ---- hist ------------------------------------------------------------------

struct NRecord {
    std::uint64_t seed;
    std::size_t gap;
    std::int64_t n;
};

std::string bar(std::size_t count, std::size_t max_count, int width = 50)
{
    if (max_count == 0) {
        return {};
    }
    const auto len = static_cast<std::size_t>(
        std::lround(static_cast<double>(width) * static_cast<double>(count) / static_cast<double>(max_count)));
    return std::string(len, '#');
}

int run_hist(const std::vector<NRecord>& records, const fs::path& out_dir, std::optional<std::int64_t> n_min,
             std::size_t clamps)
{
    fs::create_directories(out_dir);
    NSamples ns;
    {
        std::ofstream os = open_out(out_dir / "n_samples.csv");
        os << "seed,gap,N\n";
        for (const auto& r : records) {
            os << r.seed << ',' << r.gap << ',' << r.n << '\n';
            ns.values.push_back(r.n);
            ns.zeros += r.n == 0 ? 1 : 0;
        }
    }
    json summary;
    summary["n_samples"] = ns.values.size();
    summary["sigma_count"] = ns.zeros;
    summary["clamp_events"] = clamps;
    summary["mean"] = nullptr;
    summary["std"] = nullptr;
    summary["lambda0_tail"] = nullptr;
    summary["lambda0_pgf"] = nullptr;
    std::optional<double> lambda;
    try {
        const Summary s = summarize(ns);
        summary["mean"] = s.mean;
        summary["std"] = s.std;
    } catch (const InsufficientData& e) {
        std::cerr << "note: " << e.what() << '\n';
    }
    try {
        const GeometricFit f = n_min ? estimate_lambda0(ns, *n_min) : estimate_lambda0(ns);
        summary["lambda0_tail"] = f.lambda0;
        summary["lambda0_tail_se"] = f.std_error;
        summary["n_min"] = f.n_min;
        lambda = f.lambda0;
    } catch (const Error& e) {
        std::cerr << "note: tail fit: " << e.what() << '\n';
    }
    try {
        const GeometricFit f = estimate_lambda0_pgf(ns);
        summary["lambda0_pgf"] = f.lambda0;
        summary["lambda0_pgf_se"] = f.std_error;
    } catch (const Error& e) {
        std::cerr << "note: pgf pole: " << e.what() << '\n';
    }

    const Histogram hist = unit_histogram(ns.values);
    const std::int64_t top = static_cast<std::int64_t>(hist.counts.size()) - 1;
    const auto emp = empirical_pmf(ns, std::max<std::int64_t>(top, 0));
    const auto geo = lambda ? geometric_overlay(*lambda, std::max<std::int64_t>(top, 0))
                            : std::vector<double>(emp.size(), std::nan(""));
    {
        std::ofstream os = open_out(out_dir / "histogram.csv");
        os << "n,count,empirical_pmf,geometric_pmf\n";
        for (std::size_t n = 0; n < hist.counts.size(); ++n) {
            os << n << ',' << hist.counts[n] << ',' << emp[n] << ',' << geo[n] << '\n';
        }
    }
    open_out(out_dir / "summary.json") << summary.dump(2) << '\n';

    const std::size_t max_count =
        hist.counts.empty() ? 0 : *std::max_element(hist.counts.begin(), hist.counts.end());
    for (std::size_t n = 0; n < hist.counts.size(); ++n) {
        std::cout << std::setw(4) << n << ' ' << std::setw(6) << hist.counts[n] << ' '
                  << bar(hist.counts[n], max_count) << '\n';
    }
    std::cout << summary.dump() << '\n';
    return 0;
}

std::vector<NRecord> records_from_batch(const BatchResult& r)
{
    std::vector<NRecord> out;
    for (const auto& p : r.paths) {
        for (std::size_t g = 0; g < p.n_values.size(); ++g) {
            out.push_back({p.seed, g, p.n_values[g]});
        }
    }
    return out;
}

std::vector<NRecord> records_from_files(const std::vector<std::string>& files, const ThresholdOptions& th)
{
    std::vector<NRecord> out;
    for (const auto& f : files) {
        std::ifstream is(f);
        if (!is) {
            throw InvalidParameter("cannot read " + f);
        }
        for (const Trajectory& t : read_trajectory_csv(is)) {
            const bool lz = t.coords == Coordinates::lz;
            const Thresholds thr = th.resolve(lz ? kNormalFormThresholds : kPreyThresholds);
            const NSamples ns = count_N(detect_events(t, thr, lz ? Channel::z : Channel::x));
            for (std::size_t g = 0; g < ns.values.size(); ++g) {
                out.push_back({t.seed, g, ns.values[g]});
            }
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Noise-induced outbreaks in a slow-fast predator-prey model"};
    app.require_subcommand(1);
    // --h is the bifurcation parameter, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");

    ParamOptions analyze_p;
    std::string analyze_csv;
    auto* analyze = app.add_subcommand("analyze", "equilibrium, Hopf thresholds and regime");
    analyze_p.attach(analyze);
    analyze->add_option("--csv", analyze_csv, "also write the table as CSV");

    ParamOptions sim_p;
    SimOptions sim_o;
    bool sim_nf = false;
    auto* simulate = app.add_subcommand("simulate", "write sample paths as CSV");
    sim_p.attach(simulate);
    sim_o.attach(simulate, true);
    simulate->add_flag("--normal-form", sim_nf, "simulate the stochastic normal form (t,l,z)");

    ParamOptions hist_p;
    ThresholdOptions hist_th;
    BatchConfig hist_b;
    std::vector<std::string> hist_inputs;
    std::string hist_out = "hist";
    std::optional<std::int64_t> hist_nmin;
    auto* hist = app.add_subcommand("hist", "distribution of the SAO count N between outbreaks");
    hist_p.attach(hist);
    hist_th.attach(hist);
    hist->add_option("--paths", hist_b.paths)->check(CLI::PositiveNumber);
    hist->add_option("--t-end", hist_b.t_end)->check(CLI::PositiveNumber);
    hist->add_option("--dt", hist_b.dt)->check(CLI::PositiveNumber);
    hist->add_option("--seed", hist_b.seed_base);
    hist->add_option("--stride", hist_b.record_stride)->check(CLI::PositiveNumber);
    hist->add_option("--input", hist_inputs, "trajectory CSVs instead of inline simulation")
        ->check(CLI::ExistingFile);
    hist->add_option("--out", hist_out, "output directory");
    hist->add_option("--n-min", hist_nmin, "tail start for the lambda0 fit (default: median)");

    ParamOptions nf_p;
    SimOptions nf_o;
    nf_o.t_end = 100.0;
    nf_o.out = "nf.csv";
    double nf_a = 0.5, nf_c0 = 1.0;
    bool nf_sim = false, nf_tw = false;
    auto* nf = app.add_subcommand("nf", "normal-form constants and repeated-spike probability");
    nf_p.attach(nf);
    nf_o.attach(nf, false);
    nf->add_option("--a", nf_a, "exponent of the horizontal scale P")->check(CLI::Range(0.0, 1.0));
    nf->add_option("--c0", nf_c0)->check(CLI::PositiveNumber);
    nf->add_flag("--time-weighted", nf_tw, "time-weighted noise for the linearized moments");
    nf->add_flag("--simulate", nf_sim, "write stochastic normal-form paths (t,l,z)");

    std::string sw_a1, sw_a2, sw_out = "sweep.csv", sw_matrix;
    ParamOptions sw_p;
    SweepConfig sw_cfg;
    auto* sweep = app.add_subcommand("sweep", "outbreak counts over a two-parameter grid");
    sw_p.attach(sweep);
    sweep->add_option("--axis1", sw_a1, "name:min:max:steps")->required();
    sweep->add_option("--axis2", sw_a2, "name:min:max:steps")->required();
    sweep->add_option("--seeds", sw_cfg.sim.paths, "paths per cell")->check(CLI::PositiveNumber);
    sweep->add_option("--t-end", sw_cfg.sim.t_end)->check(CLI::PositiveNumber);
    sweep->add_option("--dt", sw_cfg.sim.dt)->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sw_cfg.sim.seed_base);
    sweep->add_option("--out", sw_out);
    sweep->add_option("--matrix", sw_matrix, "Sigma_mean matrix for contouring");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            return run_analyze(analyze_p.resolve(), analyze_csv);
        }
        if (*simulate) {
            return run_simulate(sim_p.resolve(), sim_o, sim_nf);
        }
        if (*hist) {
            hist_b.thresholds = hist_th.resolve(kPreyThresholds);
            if (!hist_inputs.empty()) {
                return run_hist(records_from_files(hist_inputs, hist_th), hist_out, hist_nmin, 0);
            }
            const BatchResult r = run_batch(hist_p.resolve(), hist_b);
            return run_hist(records_from_batch(r), hist_out, hist_nmin, r.total_clamps());
        }
        if (*nf) {
            const NondimParams p = nf_p.resolve();
            return nf_sim ? run_simulate(p, nf_o, true) : run_nf(p, nf_a, nf_c0, nf_tw);
        }
        if (*sweep) {
            sw_cfg.base = sw_p.resolve();
            sw_cfg.axis1 = parse_axis(sw_a1);
            sw_cfg.axis2 = parse_axis(sw_a2);
            const SweepResult r = run_sweep(sw_cfg);
            std::ofstream os = open_out(sw_out);
            write_sweep_csv(os, r);
            if (!sw_matrix.empty()) {
                std::ofstream ms = open_out(sw_matrix);
                write_sweep_matrix(ms, r);
            }
            std::size_t failed = 0;
            for (const auto& c : r.cells) {
                if (c.error) {
                    ++failed;
                    std::cerr << "cell (" << c.i1 << "," << c.i2 << "): " << *c.error << '\n';
                }
            }
            std::cerr << "wrote " << r.cells.size() << " cells to " << sw_out << " (" << failed
                      << " failed)\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
