#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "outbreak/model.hpp"

namespace outbreak {

/// Coexistence equilibrium P = (alpha, (1 - alpha)(beta + alpha)).
struct Equilibrium {
    double alpha{};
    double x{};
    double y{};
    double residual{};  ///< |alpha/(beta+alpha) - d - h(1-alpha)(beta+alpha)|
};

struct JacobianSummary {
    double j11{}, j12{}, j21{}, j22{};
    double trace{};        ///< closed form in terms of alpha and alpha*
    double determinant{};  ///< closed form
    double trace_from_entries{};
    double det_from_entries{};
    std::complex<double> lambda1{};
    std::complex<double> lambda2{};
};

struct HopfThresholds {
    double h_star{};   ///< Hopf threshold at the given eps
    double h_tilde{};  ///< singular limit eps -> 0
};

struct HopfOffsets {
    double delta{};     ///< delta from the direct definition
    double delta_a3{};  ///< delta rewritten through the equilibrium relation; equals delta
    double gamma{};
    double mu{};  ///< distance-to-Hopf constant of the normal form
};

enum class Regime { Excitable, HopfUnstable, FarStable, ConditionsViolated };

std::string_view to_string(Regime r);

struct HopfData {
    double alpha_star{};
    double h_star{};
    double h_tilde{};
    double delta{};
    double gamma{};
    double mu{};
    bool nondegenerate{};
    bool stable_above_hopf{};
};

/// Left-hand side minus right-hand side of the equilibrium relation.
double equilibrium_residual(double alpha, const NondimParams& p);

/// Solves the equilibrium relation on (0, 1) by bracketed bisection plus one Newton
/// polish. A scan of 1000 points must find exactly one bracket.
Equilibrium solve_equilibrium(const NondimParams& p);

double alpha_star(const NondimParams& p);

/// 1 - beta - 2 alpha*, computed without cancellation (it is O(eps)).
double fold_gap(const NondimParams& p);

JacobianSummary jacobian_summary(const NondimParams& p, const Equilibrium& eq);

HopfThresholds hopf_thresholds(const NondimParams& p);

/// Relative gap |h*(eps) - h_tilde| / h_tilde along a shrinking eps sequence, used to
/// check the singular limit.
std::vector<double> hopf_limit_diagnostic(const NondimParams& p, int levels = 6);

/// (1-d)^2/beta < 1/eps and d beta < (1-d)(1-beta): the Jacobian at alpha* has positive
/// determinant, so trace zero there is a genuine Hopf point.
bool hopf_nondegenerate(const NondimParams& p);
/// d < (1-beta)/(1+beta): the equilibrium is asymptotically stable for every h > h*.
bool stable_above_hopf(const NondimParams& p);

Regime classify_regime(const NondimParams& p);

HopfOffsets hopf_offsets(const NondimParams& p);

HopfData hopf_data(const NondimParams& p);

struct SeparatrixConfig {
    double x_seed{0.15};  ///< seed abscissa on the repelling branch, 0 < x_seed < (1 - beta)/2
    double offset{1e-6};  ///< displacement of the seed in y
    double dt{1e-3};
    double duration{60.0};  ///< backward-time horizon
    double x_min{0.0}, x_max{1.0}, y_min{0.0}, y_max{0.6};  ///< truncation box
};

struct Separatrix {
    std::vector<double> times;  ///< 0, -dt, -2 dt, ...
    std::vector<State> points;
};

/// Backward-time orbit of the deterministic field started just above the repelling
/// middle branch of the critical manifold. Stops at the truncation box or the horizon.
Separatrix separatrix(const NondimParams& p, const SeparatrixConfig& cfg = {});

}  // namespace outbreak
