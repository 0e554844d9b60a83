#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "outbreak/events.hpp"

namespace outbreak {

struct Histogram {
    std::vector<std::int64_t> edges;  ///< unit bins [edges[i], edges[i+1])
    std::vector<std::size_t> counts;
    std::size_t total{};
};

struct Summary {
    double mean{};
    double std{};  ///< n - 1 denominator
    Histogram histogram;
};

/// Throws InsufficientData for fewer than two samples.
Summary summarize(const NSamples& ns);

Histogram unit_histogram(const std::vector<std::int64_t>& values);

enum class FitMethod { tail_hazard, pgf_pole };

std::string_view to_string(FitMethod m);

struct GeometricFit {
    double lambda0{};
    FitMethod method{FitMethod::tail_hazard};
    std::int64_t n_min{};
    double std_error{};
    /// Secondary estimate: pooled conditional continuation probability over n >= n_min.
    double hazard_average{};
};

struct TailFitOptions {
    std::size_t min_tail{50};
    std::size_t bootstrap{200};
    std::uint64_t bootstrap_seed{12345};
};

/// Weighted least squares on log P{N > n}, n >= n_min; lambda0 = exp(slope).
/// Throws InsufficientTail if fewer than `min_tail` samples have N >= n_min or the fit
/// does not land in (0, 1).
GeometricFit estimate_lambda0(const NSamples& ns, std::int64_t n_min,
                              const TailFitOptions& opt = {});

/// Same with n_min set to the sample median.
GeometricFit estimate_lambda0(const NSamples& ns, const TailFitOptions& opt = {});

/// Point estimate only (no bootstrap).
double tail_slope_lambda0(const std::vector<std::int64_t>& values, std::int64_t n_min);

std::int64_t median(std::vector<std::int64_t> values);

/// Empirical E[theta^N]; 0^0 = 1.
double pgf(const NSamples& ns, double theta);

struct PgfSweep {
    std::vector<double> theta;
    std::vector<double> value;
    std::vector<double> derivative;  ///< forward difference
    double theta_cross{};            ///< first grid point where the derivative exceeds the threshold
    bool crossed{false};
};

PgfSweep pgf_sweep(const NSamples& ns, double threshold = 50.0, double step = 0.01,
                   double theta_max = 10.0);

/// lambda0 = 1 / theta_cross from the pgf sweep, with a bootstrap standard error.
GeometricFit estimate_lambda0_pgf(const NSamples& ns, double threshold = 50.0,
                                  double step = 0.01, const TailFitOptions& opt = {});

/// (1 - lambda0) lambda0^n for n = 0..n_max.
std::vector<double> geometric_overlay(double lambda0, std::int64_t n_max);

std::vector<double> empirical_pmf(const NSamples& ns, std::int64_t n_max);

/// 1/2 sum_{n >= n_from} |p(n) - q(n)| over the common support.
double total_variation(const std::vector<double>& p, const std::vector<double>& q,
                       std::int64_t n_from = 0);

/// Distance between the empirical law of N given N >= n_from and the geometric law with
/// parameter 1 - lambda0 shifted to start at n_from. Memorylessness makes the two agree
/// when the tail is geometric.
double tail_total_variation(const NSamples& ns, double lambda0, std::int64_t n_from);

}  // namespace outbreak
