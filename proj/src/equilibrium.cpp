#include "outbreak/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "outbreak/error.hpp"

namespace outbreak {

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::Excitable: return "Excitable";
    case Regime::HopfUnstable: return "HopfUnstable";
    case Regime::FarStable: return "FarStable";
    case Regime::ConditionsViolated: return "ConditionsViolated";
    }
    return "?";
}

double equilibrium_residual(double alpha, const NondimParams& p)
{
    return alpha / (p.beta + alpha) - p.d - p.h * (1.0 - alpha) * (p.beta + alpha);
}

namespace {

double residual_derivative(double alpha, const NondimParams& p)
{
    const double ba = p.beta + alpha;
    return p.beta / (ba * ba) - p.h * (1.0 - p.beta - 2.0 * alpha);
}

}  // namespace

Equilibrium solve_equilibrium(const NondimParams& p)
{
    constexpr double lo = 1e-9;
    constexpr double hi = 1.0 - 1e-9;
    constexpr int scan = 1000;

    int brackets = 0;
    double a = lo, b = hi;
    double prev_x = lo;
    double prev_f = equilibrium_residual(lo, p);
    for (int i = 1; i <= scan; ++i) {
        const double x = lo + (hi - lo) * i / scan;
        const double f = equilibrium_residual(x, p);
        if (f == 0.0 || (prev_f < 0.0) != (f < 0.0)) {
            if (++brackets == 1) {
                a = prev_x;
                b = x;
            }
        }
        prev_x = x;
        prev_f = f;
    }
    if (brackets == 0) {
        throw NoRoot("equilibrium relation has no root on (0, 1)");
    }
    if (brackets > 1) {
        std::ostringstream os;
        os << "nullclines intersect " << brackets << " times on (0, 1)";
        throw MultipleRoots(os.str());
    }

    double fa = equilibrium_residual(a, p);
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) {
            break;
        }
        const double fm = equilibrium_residual(m, p);
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double alpha = 0.5 * (a + b);
    double res = std::abs(equilibrium_residual(alpha, p));
    // One Newton polish, kept only if it improves the residual.
    const double deriv = residual_derivative(alpha, p);
    if (deriv != 0.0) {
        const double polished = alpha - equilibrium_residual(alpha, p) / deriv;
        const double pres = std::abs(equilibrium_residual(polished, p));
        if (polished > 0.0 && polished < 1.0 && pres < res) {
            alpha = polished;
            res = pres;
        }
    }
    return {alpha, alpha, (1.0 - alpha) * (p.beta + alpha), res};
}

double alpha_star(const NondimParams& p)
{
    const double a = (1.0 - p.beta) - p.eps * (1.0 - p.d);
    return (a + std::sqrt(a * a + 8.0 * p.d * p.beta * p.eps)) / 4.0;
}

double fold_gap(const NondimParams& p)
{
    // 1 - beta - 2 alpha* = 2 eps (1 - beta - d (1 + beta)) / (B + sqrt(A^2 + 8 d beta eps))
    const double a = (1.0 - p.beta) - p.eps * (1.0 - p.d);
    const double b = (1.0 - p.beta) + p.eps * (1.0 - p.d);
    const double s = std::sqrt(a * a + 8.0 * p.d * p.beta * p.eps);
    return 2.0 * p.eps * (1.0 - p.beta - p.d * (1.0 + p.beta)) / (b + s);
}

JacobianSummary jacobian_summary(const NondimParams& p, const Equilibrium& eq)
{
    const double al = eq.alpha;
    const double as = alpha_star(p);
    const double b = p.beta;
    const double e = p.eps;
    JacobianSummary j;
    j.j11 = al / e * (1.0 - b - 2.0 * al) / (b + al);
    j.j12 = -al / (e * (b + al));
    j.j21 = b * (1.0 - al) / (b + al);
    j.j22 = -p.h * (1.0 - al) * (b + al);
    j.trace = (as - al) / (e * (b + al) * (b + as)) *
              (2.0 * al * as + 2.0 * (al + as) * b - b + e * b + b * b);
    j.determinant = al * (1.0 - al) / e * (b / ((b + al) * (b + al)) - p.h * (1.0 - b - 2.0 * al));
    j.trace_from_entries = j.j11 + j.j22;
    j.det_from_entries = j.j11 * j.j22 - j.j12 * j.j21;

    const std::complex<double> half_tr = 0.5 * j.trace;
    const std::complex<double> disc = std::sqrt(std::complex<double>(
        0.25 * j.trace * j.trace - j.determinant, 0.0));
    j.lambda1 = half_tr + disc;
    j.lambda2 = half_tr - disc;
    return j;
}

HopfThresholds hopf_thresholds(const NondimParams& p)
{
    const double as = alpha_star(p);
    const double ba = p.beta + as;
    // alpha* (1 - beta - 2 alpha*) / (eps (1 - alpha*)(beta + alpha*)^2) with the
    // O(eps) gap divided out analytically.
    const double gap_over_eps = fold_gap(p) / p.eps;
    const double h_star = as * gap_over_eps / ((1.0 - as) * ba * ba);
    const double h_tilde =
        4.0 * (1.0 - p.beta - p.d * (1.0 + p.beta)) / std::pow(1.0 + p.beta, 3);
    return {h_star, h_tilde};
}

std::vector<double> hopf_limit_diagnostic(const NondimParams& p, int levels)
{
    std::vector<double> gaps;
    NondimParams q = p;
    for (int i = 0; i < levels; ++i) {
        const auto th = hopf_thresholds(q);
        gaps.push_back(std::abs(th.h_star - th.h_tilde) / th.h_tilde);
        q.eps /= 10.0;
    }
    return gaps;
}

bool hopf_nondegenerate(const NondimParams& p)
{
    return (1.0 - p.d) * (1.0 - p.d) / p.beta < 1.0 / p.eps &&
           p.d * p.beta < (1.0 - p.d) * (1.0 - p.beta);
}

bool stable_above_hopf(const NondimParams& p)
{
    return p.d < (1.0 - p.beta) / (1.0 + p.beta);
}

Regime classify_regime(const NondimParams& p)
{
    if (!stable_above_hopf(p)) {
        return Regime::ConditionsViolated;
    }
    const auto th = hopf_thresholds(p);
    if (p.h <= th.h_star) {
        return Regime::HopfUnstable;
    }
    if (p.h < th.h_tilde) {
        return Regime::Excitable;
    }
    return Regime::FarStable;
}

HopfOffsets hopf_offsets(const NondimParams& p)
{
    const double as = alpha_star(p);
    const double b = p.beta;
    const double ys = (1.0 - as) * (b + as);
    const double competition = 1.0 - p.d - p.h * ys;
    HopfOffsets o;
    o.delta = as - p.d * (b + as) - p.h * (1.0 - as) * (b + as) * (b + as);
    o.gamma = ys * competition;
    o.mu = (1.0 - b - 3.0 * as) * o.delta / (competition * std::sqrt(p.eps));

    o.delta_a3 = std::numeric_limits<double>::quiet_NaN();
    try {
        const double al = solve_equilibrium(p).alpha;
        o.delta_a3 = -(b + as) * (al - as) *
                     (b / ((b + al) * (b + as)) - p.h * (1.0 - b - (al + as)));
    } catch (const NoRoot&) {
    } catch (const MultipleRoots&) {
    }
    if (std::isfinite(o.delta_a3) &&
        std::abs(o.delta - o.delta_a3) > 1e-9 * std::max(1.0, std::abs(o.delta))) {
        throw std::logic_error("delta disagrees between its two closed forms");
    }
    return o;
}

HopfData hopf_data(const NondimParams& p)
{
    const auto th = hopf_thresholds(p);
    const auto off = hopf_offsets(p);
    return {alpha_star(p), th.h_star, th.h_tilde, off.delta, off.gamma, off.mu,
            hopf_nondegenerate(p), stable_above_hopf(p)};
}

Separatrix separatrix(const NondimParams& p, const SeparatrixConfig& cfg)
{
    const Regime regime = classify_regime(p);
    if (regime == Regime::ConditionsViolated || regime == Regime::HopfUnstable) {
        throw InvalidParameter("separatrix requires a stable equilibrium (h > h*)");
    }
    const double fold = 0.5 * (1.0 - p.beta);
    if (!(cfg.x_seed > 0.0 && cfg.x_seed < fold)) {
        throw InvalidParameter("separatrix seed must lie on the repelling branch");
    }
    if (!(cfg.dt > 0.0) || !(cfg.duration > 0.0)) {
        throw InvalidParameter("separatrix dt and duration must be positive");
    }

    auto back = [&p](const State& s) {
        const Vec2 f = drift(s, p);
        return Vec2{-f[0], -f[1]};
    };
    auto inside = [&cfg](const State& s) {
        return s.x >= cfg.x_min && s.x <= cfg.x_max && s.y >= cfg.y_min && s.y <= cfg.y_max;
    };

    Separatrix out;
    State s{cfg.x_seed, (1.0 - cfg.x_seed) * (p.beta + cfg.x_seed) + cfg.offset};
    out.times.push_back(0.0);
    out.points.push_back(s);
    const auto steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
    const double dt = cfg.dt;
    for (std::size_t k = 1; k <= steps; ++k) {
        auto shifted = [&s](const Vec2& v, double c) { return State{s.x + c * v[0], s.y + c * v[1]}; };
        const Vec2 k1 = back(s);
        const Vec2 k2 = back(shifted(k1, 0.5 * dt));
        const Vec2 k3 = back(shifted(k2, 0.5 * dt));
        const Vec2 k4 = back(shifted(k3, dt));
        s.x += dt / 6.0 * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]);
        s.y += dt / 6.0 * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]);
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x < -0.1 || s.x > 1.5 ||
            s.y < -0.1 || s.y > 1.5) {
            throw IntegrationDiverged("backward separatrix orbit left [-0.1, 1.5]^2");
        }
        if (!inside(s)) {
            break;
        }
        out.times.push_back(-static_cast<double>(k) * dt);
        out.points.push_back(s);
    }
    return out;
}

}  // namespace outbreak
