#pragma once

// Numerical oracles shared by the unit tests and the acceptance run.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "outbreak/integrator.hpp"
#include "outbreak/normal_form.hpp"
#include "outbreak/rng.hpp"

namespace outbreak::oracle {

using Jac = std::array<Vec2, 2>;  // rows: (l, z); columns: (x, y)

// Jacobian of the (x, y) -> (l, z) chain: central differences with one Richardson step.
inline Jac transform_jacobian(State s, const NFConstants& k)
{
    auto diff = [&](int col, double h) {
        State a = s, b = s;
        (col == 0 ? a.x : a.y) += h;
        (col == 0 ? b.x : b.y) -= h;
        const NfPoint pa = transform_to_nf(a, k), pb = transform_to_nf(b, k);
        return Vec2{(pa.l - pb.l) / (2 * h), (pa.z - pb.z) / (2 * h)};
    };
    Jac j{};
    for (int col = 0; col < 2; ++col) {
        const Vec2 d1 = diff(col, 1e-6), d2 = diff(col, 0.5e-6);
        for (int row = 0; row < 2; ++row) {
            j[row][col] = (4.0 * d2[row] - d1[row]) / 3.0;
        }
    }
    return j;
}

// Time-rescaled original field pushed through the transformation, on the normal-form clock.
inline Vec2 pushed_field(double l, double z, const NondimParams& p, const NFConstants& k)
{
    const State s = transform_from_nf({l, z}, k);
    const Jac j = transform_jacobian(s, k);
    const Vec2 f = drift(s, p, DriftVariant::time_rescaled);
    const double se = std::sqrt(p.eps);
    return {se * (j[0][0] * f[0] + j[0][1] * f[1]), se * (j[1][0] * f[0] + j[1][1] * f[1])};
}

inline double rel(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-3});
}

// Least-squares slope of log(err) against log(dt).
inline double fitted_order(const std::vector<double>& dts, const std::vector<double>& errs)
{
    const double n = static_cast<double>(dts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        const double x = std::log(dts[i]), y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Mean absolute terminal error against exact geometric Brownian motion on [0, 1], dt = 2^-level,
// with the coarse increments built by summing a shared fine-level path.
inline std::vector<double> strong_errors(Scheme scheme, const std::vector<int>& levels, int paths)
{
    const GeometricSde gbm{1.5, 1.0};
    const double T = 1.0;
    const std::size_t n_fine = std::size_t{1} << levels.back();
    const double dt_fine = T / static_cast<double>(n_fine);
    std::vector<double> err(levels.size(), 0.0);
    for (int path = 0; path < paths; ++path) {
        const auto fine = brownian_increments(1000 + static_cast<std::uint64_t>(path), n_fine, dt_fine);
        Vec2 bt{0.0, 0.0};
        for (const auto& db : fine) {
            bt[0] += db[0];
            bt[1] += db[1];
        }
        for (std::size_t li = 0; li < levels.size(); ++li) {
            const std::size_t n = std::size_t{1} << levels[li];
            const std::size_t group = n_fine / n;
            std::size_t cursor = 0;
            auto noise = [&] {
                Vec2 sum{0.0, 0.0};
                for (std::size_t g = 0; g < group; ++g, ++cursor) {
                    sum[0] += fine[cursor][0];
                    sum[1] += fine[cursor][1];
                }
                return sum;
            };
            Vec2 last{};
            integrate_sde(gbm, Vec2{1.0, 1.0}, T / static_cast<double>(n), n, n, scheme, noise,
                          [&last](double, const Vec2& s) { last = s; });
            for (int c = 0; c < 2; ++c) {
                const double exact = std::exp((gbm.a - 0.5 * gbm.b * gbm.b) * T + gbm.b * bt[c]);
                err[li] += std::abs(last[c] - exact) / (2.0 * paths);
            }
        }
    }
    return err;
}

inline double strong_order(Scheme scheme, int paths = 400)
{
    const std::vector<int> levels{6, 7, 8, 9, 10};
    std::vector<double> dts;
    for (const int l : levels) {
        dts.push_back(std::ldexp(1.0, -l));
    }
    return fitted_order(dts, strong_errors(scheme, levels, paths));
}

}  // namespace outbreak::oracle
