#include "outbreak/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "outbreak/equilibrium.hpp"
#include "outbreak/error.hpp"
#include "outbreak/normal_form.hpp"

namespace outbreak {

namespace {

constexpr const char* kAxisNames[] = {"h", "mu", "sigma", "sigma1", "sigma2", "eps", "beta", "d"};
constexpr std::uint64_t kCellSeedStride = 1000003;

bool known_axis(const std::string& name)
{
    return std::find(std::begin(kAxisNames), std::end(kAxisNames), name) != std::end(kAxisNames);
}

}  // namespace

double AxisSpec::value(std::size_t i) const
{
    if (steps <= 1) {
        return min;
    }
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

AxisSpec parse_axis(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) {
        parts.push_back(item);
    }
    if (parts.size() != 4) {
        throw InvalidParameter("axis must be name:min:max:steps, got '" + text + "'");
    }
    AxisSpec a;
    a.name = parts[0];
    try {
        a.min = std::stod(parts[1]);
        a.max = std::stod(parts[2]);
        const long long steps = std::stoll(parts[3]);
        if (steps < 1) {
            throw InvalidParameter("axis steps must be at least 1");
        }
        a.steps = static_cast<std::size_t>(steps);
    } catch (const std::logic_error&) {
        throw InvalidParameter("malformed number in axis '" + text + "'");
    }
    return a;
}

void validate(const SweepConfig& cfg)
{
    for (const AxisSpec* a : {&cfg.axis1, &cfg.axis2}) {
        if (!known_axis(a->name)) {
            throw InvalidParameter("unknown sweep axis '" + a->name + "'");
        }
        if (a->steps < 1) {
            throw InvalidParameter("axis steps must be at least 1");
        }
        if (!std::isfinite(a->min) || !std::isfinite(a->max)) {
            throw InvalidParameter("axis bounds must be finite");
        }
    }
    if (cfg.axis1.name == cfg.axis2.name) {
        throw InvalidParameter("sweep axes must differ");
    }
    if (cfg.sim.paths < 1) {
        throw InvalidParameter("at least one seed per cell");
    }
}

std::pair<double, double> split_sigma(double sigma_total)
{
    if (!(sigma_total >= 0.0)) {
        throw InvalidParameter("sigma_total must be nonnegative");
    }
    const double s = sigma_total / std::sqrt(2.0);
    return {s, s};
}

double h_for_mu(const NondimParams& p, double mu)
{
    // delta and the competition factor are both affine in h at fixed alpha*.
    const double as = alpha_star(p);
    const double ys = (1.0 - as) * (p.beta + as);
    const double c1 = 1.0 - p.beta - 3.0 * as;
    const double a = as - p.d * (p.beta + as);
    const double b = ys * (p.beta + as);
    const double m = mu * std::sqrt(p.eps);
    const double denom = c1 * b - m * ys;
    if (denom == 0.0) {
        throw InvalidParameter("mu is not reachable by varying h");
    }
    return (c1 * a - m * (1.0 - p.d)) / denom;
}

NondimParams apply_axis(NondimParams p, const std::string& name, double value)
{
    if (name == "h") {
        p.h = value;
    } else if (name == "mu") {
        p.h = h_for_mu(p, value);
    } else if (name == "sigma") {
        std::tie(p.sigma1, p.sigma2) = split_sigma(value);
    } else if (name == "sigma1") {
        p.sigma1 = value;
    } else if (name == "sigma2") {
        p.sigma2 = value;
    } else if (name == "eps") {
        p.eps = value;
    } else if (name == "beta") {
        p.beta = value;
    } else if (name == "d") {
        p.d = value;
    } else {
        throw InvalidParameter("unknown sweep axis '" + name + "'");
    }
    return p;
}

SweepCell run_cell(const SweepConfig& cfg, std::size_t i1, std::size_t i2)
{
    SweepCell cell;
    cell.i1 = i1;
    cell.i2 = i2;
    cell.axis1 = cfg.axis1.value(i1);
    cell.axis2 = cfg.axis2.value(i2);
    cell.mu = cell.sigma_mean = cell.sigma_std = cell.mean_N = cell.phi_neg_kappa = std::nan("");
    try {
        // mu depends on the other parameters, so it is applied last.
        NondimParams p = cfg.base;
        if (cfg.axis1.name == "mu") {
            p = apply_axis(apply_axis(p, cfg.axis2.name, cell.axis2), "mu", cell.axis1);
        } else {
            p = apply_axis(apply_axis(p, cfg.axis1.name, cell.axis1), cfg.axis2.name, cell.axis2);
        }
        cell.params = p;
        validate(p, EpsPolicy::warn);
        cell.mu = hopf_offsets(p).mu;
        cell.phi_neg_kappa = repeated_spike_probability(stoch_nf_coeffs(p)).prob;

        BatchConfig sim = cfg.sim;
        const std::size_t index = i1 * cfg.axis2.steps + i2;
        sim.seed_base = cfg.sim.seed_base + index * kCellSeedStride;
        const BatchResult batch = run_batch_serial(p, sim);

        double sum = 0.0;
        for (const auto& path : batch.paths) {
            if (path.status != PathStatus::ok) {
                throw IntegrationDiverged("non-finite state in sweep cell");
            }
            const std::size_t sigma = repeated_outbreak_count({path.n_values, 0});
            cell.sigma_per_seed.push_back(sigma);
            sum += static_cast<double>(sigma);
        }
        const double n = static_cast<double>(cell.sigma_per_seed.size());
        cell.sigma_mean = sum / n;
        double ss = 0.0;
        for (const auto s : cell.sigma_per_seed) {
            const double dev = static_cast<double>(s) - cell.sigma_mean;
            ss += dev * dev;
        }
        cell.sigma_std = n > 1.0 ? std::sqrt(ss / (n - 1.0)) : 0.0;

        const NSamples pooled = batch.pooled();
        if (!pooled.values.empty()) {
            cell.mean_N = std::accumulate(pooled.values.begin(), pooled.values.end(), 0.0) /
                          static_cast<double>(pooled.values.size());
        }
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

SweepResult run_sweep(const SweepConfig& cfg)
{
    validate(cfg);
    SweepResult res;
    res.n1 = cfg.axis1.steps;
    res.n2 = cfg.axis2.steps;
    res.cells.resize(res.n1 * res.n2);
    const auto total = static_cast<std::int64_t>(res.cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < total; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        res.cells[idx] = run_cell(cfg, idx / res.n2, idx % res.n2);
    }
    return res;
}

SweepResult run_sweep_serial(const SweepConfig& cfg, const std::vector<std::size_t>& order)
{
    validate(cfg);
    SweepResult res;
    res.n1 = cfg.axis1.steps;
    res.n2 = cfg.axis2.steps;
    res.cells.resize(res.n1 * res.n2);
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> all(res.cells.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (sorted != all) {
        throw InvalidParameter("cell order must be a permutation of the grid");
    }
    for (const auto idx : order) {
        res.cells[idx] = run_cell(cfg, idx / res.n2, idx % res.n2);
    }
    return res;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v)
{
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) {
            ++j;
        }
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[idx[k]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) {
        throw InvalidParameter("spearman needs equal-length samples");
    }
    if (a.size() < 2) {
        return std::nan("");
    }
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) {
        return std::nan("");
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace outbreak
