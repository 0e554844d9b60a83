#include "outbreak/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "outbreak/error.hpp"

namespace outbreak {

std::string_view to_string(FitMethod m)
{
    return m == FitMethod::tail_hazard ? "tail_hazard" : "pgf_pole";
}

Histogram unit_histogram(const std::vector<std::int64_t>& values)
{
    Histogram h;
    const std::int64_t top = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
    h.counts.assign(static_cast<std::size_t>(top) + 1, 0);
    for (std::int64_t e = 0; e <= top + 1; ++e) {
        h.edges.push_back(e);
    }
    for (const auto v : values) {
        if (v < 0) {
            throw InvalidParameter("N samples must be nonnegative");
        }
        ++h.counts[static_cast<std::size_t>(v)];
    }
    h.total = values.size();
    return h;
}

Summary summarize(const NSamples& ns)
{
    const auto& v = ns.values;
    if (v.size() < 2) {
        throw InsufficientData("summarize needs at least two N samples");
    }
    Summary s;
    const double n = static_cast<double>(v.size());
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (const auto x : v) {
        ss += (static_cast<double>(x) - s.mean) * (static_cast<double>(x) - s.mean);
    }
    s.std = std::sqrt(ss / (n - 1.0));
    s.histogram = unit_histogram(v);
    return s;
}

std::int64_t median(std::vector<std::int64_t> values)
{
    if (values.empty()) {
        throw InsufficientData("median of an empty sample");
    }
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

namespace {

/// survival[n] = #{N > n} for n = 0..max.
std::vector<double> survival_counts(const std::vector<std::int64_t>& values)
{
    const std::int64_t top = *std::max_element(values.begin(), values.end());
    std::vector<double> counts(static_cast<std::size_t>(top) + 2, 0.0);
    for (const auto v : values) {
        counts[static_cast<std::size_t>(v)] += 1.0;
    }
    std::vector<double> surv(counts.size(), 0.0);
    double above = 0.0;
    for (std::size_t n = counts.size(); n-- > 0;) {
        surv[n] = above;
        above += counts[n];
    }
    return surv;
}

double hazard_average(const std::vector<std::int64_t>& values, std::int64_t n_min)
{
    double exits = 0.0;
    double at_risk = 0.0;
    for (const auto v : values) {
        if (v > n_min) {
            // at risk for every n in [n_min, v - 1]; exits at n = v - 1
            at_risk += static_cast<double>(v - n_min);
            exits += 1.0;
        }
    }
    return at_risk > 0.0 ? 1.0 - exits / at_risk : std::nan("");
}

}  // namespace

double tail_slope_lambda0(const std::vector<std::int64_t>& values, std::int64_t n_min)
{
    if (values.empty()) {
        throw InsufficientTail("no samples");
    }
    const auto surv = survival_counts(values);
    const double total = static_cast<double>(values.size());
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int points = 0;
    for (std::size_t n = static_cast<std::size_t>(std::max<std::int64_t>(n_min, 0)); n < surv.size();
         ++n) {
        if (surv[n] <= 0.0) {
            break;
        }
        const double w = surv[n];
        const double x = static_cast<double>(n);
        const double y = std::log(surv[n] / total);
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
        ++points;
    }
    if (points < 2) {
        throw InsufficientTail("fewer than two tail points for the survival fit");
    }
    const double denom = sw * sxx - sx * sx;
    const double slope = (sw * sxy - sx * sy) / denom;
    const double lambda0 = std::exp(slope);
    if (!(lambda0 > 0.0 && lambda0 < 1.0)) {
        throw InsufficientTail("survival fit does not decay");
    }
    return lambda0;
}

namespace {

// Standard deviation of `estimate` over resamples with replacement; failed replicates
// (InsufficientTail) are skipped.
template <class Estimator>
double bootstrap_se(const std::vector<std::int64_t>& v, const TailFitOptions& opt,
                    const Estimator& estimate)
{
    std::vector<double> reps(opt.bootstrap, std::nan(""));
    const auto b = static_cast<std::int64_t>(opt.bootstrap);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < b; ++r) {
        std::mt19937_64 eng(opt.bootstrap_seed + static_cast<std::uint64_t>(r));
        std::vector<std::int64_t> resample(v.size());
        for (auto& x : resample) {
            x = v[eng() % v.size()];
        }
        try {
            reps[static_cast<std::size_t>(r)] = estimate(resample);
        } catch (const InsufficientTail&) {
        }
    }
    double sum = 0.0, sum2 = 0.0;
    std::size_t ok = 0;
    for (const double r : reps) {
        if (std::isfinite(r)) {
            sum += r;
            sum2 += r * r;
            ++ok;
        }
    }
    if (ok < 2) {
        return std::nan("");
    }
    const double mean = sum / static_cast<double>(ok);
    return std::sqrt(std::max(0.0, (sum2 - static_cast<double>(ok) * mean * mean) /
                                       static_cast<double>(ok - 1)));
}

// Empirical pgf from value counts, by Horner's rule.
double pgf_counts(const std::vector<std::size_t>& counts, std::size_t total, double theta)
{
    double acc = 0.0;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        acc = acc * theta + static_cast<double>(*it);
    }
    return acc / static_cast<double>(total);
}

PgfSweep sweep_values(const std::vector<std::int64_t>& values, double threshold, double step,
                      double theta_max)
{
    if (!(step > 0.0)) {
        throw InvalidParameter("pgf sweep step must be positive");
    }
    if (values.empty()) {
        throw InsufficientData("pgf of an empty sample");
    }
    const Histogram h = unit_histogram(values);
    const auto G = [&](double theta) { return pgf_counts(h.counts, h.total, theta); };
    PgfSweep sw;
    double prev = G(0.0);
    for (int i = 0;; ++i) {
        const double theta = i * step;
        if (theta > theta_max) {
            break;
        }
        const double next = G(theta + step);
        const double deriv = (next - prev) / step;
        sw.theta.push_back(theta);
        sw.value.push_back(prev);
        sw.derivative.push_back(deriv);
        if (deriv > threshold) {
            sw.theta_cross = theta;
            sw.crossed = true;
            break;
        }
        prev = next;
    }
    return sw;
}

double pole_lambda0(const std::vector<std::int64_t>& values, double threshold, double step)
{
    const PgfSweep sw = sweep_values(values, threshold, step, 10.0);
    if (!sw.crossed || sw.theta_cross <= 1.0) {
        throw InsufficientTail("pgf derivative never exceeds the threshold beyond theta = 1");
    }
    return 1.0 / sw.theta_cross;
}

}  // namespace

GeometricFit estimate_lambda0(const NSamples& ns, std::int64_t n_min, const TailFitOptions& opt)
{
    const auto& v = ns.values;
    const auto tail = static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [n_min](std::int64_t x) { return x >= n_min; }));
    if (tail < opt.min_tail) {
        throw InsufficientTail("only " + std::to_string(tail) + " samples with N >= " +
                               std::to_string(n_min));
    }
    GeometricFit fit;
    fit.method = FitMethod::tail_hazard;
    fit.n_min = n_min;
    fit.lambda0 = tail_slope_lambda0(v, n_min);
    fit.hazard_average = hazard_average(v, n_min);

    fit.std_error = bootstrap_se(v, opt, [n_min](const std::vector<std::int64_t>& r) {
        return tail_slope_lambda0(r, n_min);
    });
    return fit;
}

GeometricFit estimate_lambda0(const NSamples& ns, const TailFitOptions& opt)
{
    if (ns.values.empty()) {
        throw InsufficientTail("no samples");
    }
    return estimate_lambda0(ns, median(ns.values), opt);
}

double pgf(const NSamples& ns, double theta)
{
    if (theta < 0.0) {
        throw InvalidParameter("pgf needs theta >= 0");
    }
    if (ns.values.empty()) {
        throw InsufficientData("pgf of an empty sample");
    }
    double sum = 0.0;
    for (const auto n : ns.values) {
        sum += std::pow(theta, static_cast<double>(n));
    }
    return sum / static_cast<double>(ns.values.size());
}

PgfSweep pgf_sweep(const NSamples& ns, double threshold, double step, double theta_max)
{
    return sweep_values(ns.values, threshold, step, theta_max);
}

GeometricFit estimate_lambda0_pgf(const NSamples& ns, double threshold, double step,
                                  const TailFitOptions& opt)
{
    GeometricFit fit;
    fit.method = FitMethod::pgf_pole;
    fit.lambda0 = pole_lambda0(ns.values, threshold, step);
    fit.std_error = bootstrap_se(ns.values, opt, [threshold, step](const auto& r) {
        return pole_lambda0(r, threshold, step);
    });
    fit.hazard_average = std::nan("");
    return fit;
}

std::vector<double> geometric_overlay(double lambda0, std::int64_t n_max)
{
    if (!(lambda0 > 0.0 && lambda0 < 1.0)) {
        throw InvalidParameter("geometric overlay needs 0 < lambda0 < 1");
    }
    std::vector<double> pmf(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)) + 1);
    double power = 1.0;
    for (auto& v : pmf) {
        v = (1.0 - lambda0) * power;
        power *= lambda0;
    }
    return pmf;
}

std::vector<double> empirical_pmf(const NSamples& ns, std::int64_t n_max)
{
    std::vector<double> pmf(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)) + 1, 0.0);
    if (ns.values.empty()) {
        return pmf;
    }
    const double w = 1.0 / static_cast<double>(ns.values.size());
    for (const auto v : ns.values) {
        if (v >= 0 && v <= n_max) {
            pmf[static_cast<std::size_t>(v)] += w;
        }
    }
    return pmf;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q,
                       std::int64_t n_from)
{
    double tv = 0.0;
    const std::size_t n = std::min(p.size(), q.size());
    for (std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(n_from, 0)); i < n; ++i) {
        tv += std::abs(p[i] - q[i]);
    }
    return 0.5 * tv;
}

double tail_total_variation(const NSamples& ns, double lambda0, std::int64_t n_from)
{
    const auto& v = ns.values;
    const auto tail = std::count_if(v.begin(), v.end(), [n_from](auto x) { return x >= n_from; });
    if (tail == 0) {
        throw InsufficientTail("no samples in the tail");
    }
    const std::int64_t top = *std::max_element(v.begin(), v.end());
    std::vector<double> emp(static_cast<std::size_t>(top - n_from) + 1, 0.0);
    for (const auto x : v) {
        if (x >= n_from) {
            emp[static_cast<std::size_t>(x - n_from)] += 1.0 / static_cast<double>(tail);
        }
    }
    const auto geo = geometric_overlay(lambda0, top - n_from);
    double tv = 0.0;
    double geo_mass = 0.0;
    for (std::size_t i = 0; i < emp.size(); ++i) {
        tv += std::abs(emp[i] - geo[i]);
        geo_mass += geo[i];
    }
    tv += 1.0 - geo_mass;  // geometric mass beyond the largest observation
    return 0.5 * tv;
}

}  // namespace outbreak
