#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "outbreak/batch.hpp"
#include "outbreak/model.hpp"

namespace outbreak {

/// One grid axis. Recognized names: h, mu, sigma (total, split equally), sigma1,
/// sigma2, eps, beta, d. A mu axis is realized by solving for the h giving that mu.
/// A single step pins the axis at min, so a 1x1 grid is one plain batch.
struct AxisSpec {
    std::string name;
    double min{};
    double max{};
    std::size_t steps{1};

    double value(std::size_t i) const;
};

/// Parses "name:min:max:steps".
AxisSpec parse_axis(const std::string& text);

struct SweepConfig {
    AxisSpec axis1;
    AxisSpec axis2;
    NondimParams base{reference_params()};
    BatchConfig sim{1, 1e-3, 200.0, 1, 10, kPreyThresholds};  ///< paths = seeds per cell
};

void validate(const SweepConfig& cfg);

struct SweepCell {
    std::size_t i1{}, i2{};
    double axis1{}, axis2{};
    NondimParams params{};
    double mu{};
    std::vector<std::size_t> sigma_per_seed;  ///< Sigma for each seed
    double sigma_mean{};
    double sigma_std{};
    double mean_N{};  ///< NaN when no inter-spike gap was observed
    double phi_neg_kappa{};
    std::optional<std::string> error;
};

struct SweepResult {
    std::size_t n1{}, n2{};
    std::vector<SweepCell> cells;  ///< row-major: index = i1 * n2 + i2

    const SweepCell& at(std::size_t i1, std::size_t i2) const { return cells[i1 * n2 + i2]; }
};

/// (sigma1, sigma2) = (s, s) / sqrt(2).
std::pair<double, double> split_sigma(double sigma_total);

/// Applies an axis value to a parameter set.
NondimParams apply_axis(NondimParams p, const std::string& name, double value);

/// h such that the normal-form mu equals `mu` at the other parameters of `p`.
double h_for_mu(const NondimParams& p, double mu);

/// Evaluates one cell; errors are recorded in the cell rather than thrown.
SweepCell run_cell(const SweepConfig& cfg, std::size_t i1, std::size_t i2);

/// Cells in parallel; per-cell seeds are sim.seed_base + cell_index * 1000003 + seed.
SweepResult run_sweep(const SweepConfig& cfg);

/// Reference implementation visiting cells in a caller-given order.
SweepResult run_sweep_serial(const SweepConfig& cfg, const std::vector<std::size_t>& order);

/// Spearman rank correlation with average ranks for ties; NaN if either side is constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace outbreak
