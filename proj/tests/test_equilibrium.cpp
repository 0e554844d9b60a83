#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "outbreak/equilibrium.hpp"
#include "outbreak/error.hpp"
#include "outbreak/integrator.hpp"
#include "outbreak/normal_form.hpp"

using namespace outbreak;

namespace {

NondimParams at_h(double h)
{
    NondimParams p = reference_params();
    p.h = h;
    return p;
}

// Independent long-double evaluation of the alpha* closed form.
long double alpha_star_ld(long double b, long double d, long double e)
{
    const long double a = (1.0L - b) - e * (1.0L - d);
    return (a + std::sqrt(a * a + 8.0L * d * b * e)) / 4.0L;
}

}  // namespace

TEST(SolveEquilibrium, ReferencePoint)
{
    const Equilibrium eq = solve_equilibrium(reference_params());
    // Oracle: scipy.optimize.brentq on the same relation.
    EXPECT_NEAR(eq.alpha, 0.3835563807056105, 1e-12);
    EXPECT_LT(eq.residual, 1e-10);
    EXPECT_EQ(eq.x, eq.alpha);
    EXPECT_NEAR(eq.y, (1.0 - eq.alpha) * (0.25 + eq.alpha), 1e-15);
}

TEST(SolveEquilibrium, AtHopfThresholdLandsOnAlphaStar)
{
    NondimParams p = reference_params();
    p.h = hopf_thresholds(p).h_star;
    EXPECT_NEAR(solve_equilibrium(p).alpha, alpha_star(p), 1e-8);
}

TEST(SolveEquilibrium, SingularLimit)
{
    NondimParams p = reference_params();
    p.eps = 1e-7;
    p.h = hopf_thresholds(p).h_tilde - 1e-6;
    EXPECT_NEAR(solve_equilibrium(p).alpha, 0.375, 1e-3);
}

TEST(SolveEquilibrium, ResidualOverRandomDraws)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ub(0.1, 0.4), ud(0.1, 0.4), uh(0.3, 2.0),
        ue(0.005, 0.1);
    int solved = 0;
    while (solved < 100) {
        NondimParams p{ub(rng), ud(rng), uh(rng), ue(rng), 0.0, 0.0};
        try {
            const Equilibrium eq = solve_equilibrium(p);
            EXPECT_LT(eq.residual, 1e-10);
            EXPECT_GT(eq.alpha, 0.0);
            EXPECT_LT(eq.alpha, 1.0);
            ++solved;
        } catch (const MultipleRoots&) {
        } catch (const NoRoot&) {
        }
    }
}

TEST(SolveEquilibrium, NoRootWhenPredatorCannotPersist)
{
    // alpha/(beta+alpha) < d on all of (0, 1): the residual never changes sign.
    NondimParams p = reference_params();
    p.d = 0.9;
    EXPECT_THROW(solve_equilibrium(p), NoRoot);
}

TEST(SolveEquilibrium, MultipleRootsAreReported)
{
    // Small beta and strong competition make the nullclines cross three times.
    NondimParams p{0.01, 0.25, 2.9, 0.05, 0.0, 0.0};
    int changes = 0;
    double prev = equilibrium_residual(1e-6, p);
    for (int i = 1; i <= 1000; ++i) {
        const double v = equilibrium_residual(1e-6 + (1.0 - 2e-6) * i / 1000.0, p);
        changes += (v > 0) != (prev > 0);
        prev = v;
    }
    ASSERT_GT(changes, 1) << "test parameters no longer give multiple crossings";
    EXPECT_THROW(solve_equilibrium(p), MultipleRoots);
}

TEST(AlphaStar, ClosedFormAgainstExtendedPrecision)
{
    const NondimParams p = reference_params();
    EXPECT_NEAR(alpha_star(p), 0.36058, 1e-5);
    EXPECT_NEAR(alpha_star(p), static_cast<double>(alpha_star_ld(0.25L, 0.25L, 0.05L)), 1e-15);
}

TEST(AlphaStar, SingularLimits)
{
    NondimParams p = reference_params();
    p.eps = 1e-12;
    EXPECT_NEAR(alpha_star(p), 0.375, 1e-10);
    p.d = 1e-12;
    EXPECT_NEAR(alpha_star(p), 0.375, 1e-10);
}

TEST(FoldGap, MatchesDirectDifference)
{
    for (const double eps : {0.05, 0.01, 1e-3}) {
        NondimParams p = reference_params();
        p.eps = eps;
        const long double direct = 1.0L - 0.25L - 2.0L * alpha_star_ld(0.25L, 0.25L, eps);
        EXPECT_NEAR(fold_gap(p), static_cast<double>(direct), 1e-14);
    }
}

TEST(Jacobian, TraceVanishesAtAlphaStarAndDeterminantIsPositive)
{
    NondimParams p = reference_params();
    p.h = hopf_thresholds(p).h_star;
    ASSERT_TRUE(hopf_nondegenerate(p));
    const JacobianSummary j = jacobian_summary(p, solve_equilibrium(p));
    EXPECT_LT(std::abs(j.trace), 1e-10);
    EXPECT_LT(std::abs(j.trace_from_entries), 1e-8);
    EXPECT_GT(j.determinant, 0.0);
}

TEST(Jacobian, StableAtReferencePoint)
{
    const NondimParams p = reference_params();
    const Equilibrium eq = solve_equilibrium(p);
    ASSERT_GT(eq.alpha, alpha_star(p));
    const JacobianSummary j = jacobian_summary(p, eq);
    EXPECT_LT(j.trace, 0.0);
    EXPECT_GT(j.determinant, 0.0);
    EXPECT_NEAR(j.trace, j.trace_from_entries, 1e-10);
    EXPECT_NEAR(j.determinant, j.det_from_entries, 1e-10);
    EXPECT_NEAR((j.lambda1 + j.lambda2).real(), j.trace, 1e-10);
    EXPECT_NEAR((j.lambda1 * j.lambda2).real(), j.determinant, 1e-10);
}

TEST(Jacobian, EntriesMatchFiniteDifferences)
{
    const NondimParams p = at_h(0.89);
    const Equilibrium eq = solve_equilibrium(p);
    const JacobianSummary j = jacobian_summary(p, eq);
    const double h = 1e-6;
    auto f = [&p](double x, double y) { return drift({x, y}, p); };
    const Vec2 fxp = f(eq.x + h, eq.y), fxm = f(eq.x - h, eq.y);
    const Vec2 fyp = f(eq.x, eq.y + h), fym = f(eq.x, eq.y - h);
    EXPECT_NEAR(j.j11, (fxp[0] - fxm[0]) / (2 * h), 1e-6);
    EXPECT_NEAR(j.j12, (fyp[0] - fym[0]) / (2 * h), 1e-6);
    EXPECT_NEAR(j.j21, (fxp[1] - fxm[1]) / (2 * h), 1e-6);
    EXPECT_NEAR(j.j22, (fyp[1] - fym[1]) / (2 * h), 1e-6);
}

TEST(Jacobian, TraceSignFollowsAlphaStarMinusAlpha)
{
    const NondimParams base = reference_params();
    const double hs = hopf_thresholds(base).h_star;
    for (const double dh : {-0.01, -0.002, 0.002, 0.01}) {
        const NondimParams p = at_h(hs + dh);
        const Equilibrium eq = solve_equilibrium(p);
        const double t = jacobian_summary(p, eq).trace;
        EXPECT_EQ(t > 0.0, alpha_star(p) > eq.alpha) << "dh = " << dh;
    }
}

TEST(HopfThresholds, SingularThresholdIsExactRational)
{
    // h_tilde = 4(1 - beta - d(1 + beta)) / (1 + beta)^3 = 4 (7/16) / (125/64) = 112/125.
    const long num = 4 * (16 - 4 - 5), den = 16;       // 4 (1 - 1/4 - 5/16) = 28/16
    const long cube_num = 125, cube_den = 64;           // (5/4)^3
    const long n = num * cube_den, dd = den * cube_num;  // 1792 / 2000
    const long g = std::gcd(n, dd);
    EXPECT_EQ(n / g, 112);
    EXPECT_EQ(dd / g, 125);
    EXPECT_DOUBLE_EQ(hopf_thresholds(reference_params()).h_tilde, 112.0 / 125.0);
}

TEST(HopfThresholds, ReferenceHStar)
{
    const NondimParams p = reference_params();
    const long double as = alpha_star_ld(0.25L, 0.25L, 0.05L);
    // At h*, alpha* solves the equilibrium relation.
    const long double hs = (as / (0.25L + as) - 0.25L) / ((1.0L - as) * (0.25L + as));
    EXPECT_NEAR(hopf_thresholds(p).h_star, 0.8723, 1e-4);
    EXPECT_NEAR(hopf_thresholds(p).h_star, static_cast<double>(hs), 1e-12);
}

TEST(HopfThresholds, ConvergeToSingularLimit)
{
    NondimParams p = reference_params();
    p.eps = 1e-6;
    const auto th = hopf_thresholds(p);
    EXPECT_LT(std::abs(th.h_star - th.h_tilde), 1e-3);
    const auto gaps = hopf_limit_diagnostic(reference_params(), 6);
    ASSERT_EQ(gaps.size(), 6u);
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        EXPECT_LT(gaps[i], gaps[i - 1]);
    }
}

TEST(Regime, Classification)
{
    EXPECT_EQ(classify_regime(at_h(0.875)), Regime::Excitable);
    EXPECT_EQ(classify_regime(at_h(0.86)), Regime::HopfUnstable);
    EXPECT_EQ(classify_regime(at_h(0.91)), Regime::FarStable);
    NondimParams p = reference_params();
    p.d = 0.7;
    EXPECT_EQ(classify_regime(p), Regime::ConditionsViolated);
    EXPECT_EQ(to_string(Regime::Excitable), "Excitable");
}

TEST(HopfOffsets, VanishAtHopfPoint)
{
    NondimParams p = reference_params();
    p.h = hopf_thresholds(p).h_star;
    const HopfOffsets o = hopf_offsets(p);
    EXPECT_NEAR(o.delta, 0.0, 1e-8);
    EXPECT_NEAR(o.mu, 0.0, 1e-8);
}

TEST(HopfOffsets, SignsAroundHopfPoint)
{
    EXPECT_LT(hopf_offsets(at_h(0.91)).delta, 0.0);
    EXPECT_GT(hopf_offsets(at_h(0.86)).delta, 0.0);
    for (const double h : {0.873, 0.88, 0.89}) {
        const NondimParams p = at_h(h);
        ASSERT_TRUE(hopf_nondegenerate(p) && stable_above_hopf(p));
        EXPECT_GT(hopf_offsets(p).mu, 0.0);
    }
}

TEST(HopfOffsets, TwoFormsOfDeltaAgree)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uh(0.8, 1.0);
    for (int i = 0; i < 100; ++i) {
        const HopfOffsets o = hopf_offsets(at_h(uh(rng)));
        EXPECT_NEAR(o.delta, o.delta_a3, 1e-10);
    }
}

TEST(HopfData, Aggregates)
{
    const NondimParams p = reference_params();
    const HopfData hd = hopf_data(p);
    EXPECT_EQ(hd.alpha_star, alpha_star(p));
    EXPECT_EQ(hd.mu, hopf_offsets(p).mu);
    EXPECT_TRUE(hd.nondegenerate);
    EXPECT_TRUE(hd.stable_above_hopf);
    EXPECT_LT(hd.h_star, hd.h_tilde);
}

TEST(Separatrix, StaysInBoxWithMonotoneTimes)
{
    const NondimParams p = reference_params();
    const Separatrix s = separatrix(p);
    ASSERT_GT(s.points.size(), 10u);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        EXPECT_GE(s.points[i].x, 0.0);
        EXPECT_LE(s.points[i].x, 1.0);
        EXPECT_GE(s.points[i].y, 0.0);
        EXPECT_LE(s.points[i].y, 0.6);
        if (i > 0) {
            EXPECT_LT(s.times[i], s.times[i - 1]);
        }
    }
}

namespace {

// The polyline's y at abscissa x, by linear interpolation.
double separatrix_y_at(const Separatrix& s, double x)
{
    for (std::size_t i = 1; i < s.points.size(); ++i) {
        const State a = s.points[i - 1], b = s.points[i];
        if ((a.x - x) * (b.x - x) <= 0.0 && a.x != b.x) {
            return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
        }
    }
    return std::nan("");
}

}  // namespace

TEST(Separatrix, PassesAboveEquilibriumConsistentWithNormalForm)
{
    // In (l, z) the focus sits near z = 1/2 and the separatrix near z = 0; the map sends
    // larger y to smaller z (c1 < 0), so the separatrix must run above P.
    const NondimParams p = reference_params();
    const Equilibrium eq = solve_equilibrium(p);
    const Separatrix s = separatrix(p);
    const double y = separatrix_y_at(s, eq.x);
    ASSERT_TRUE(std::isfinite(y));
    EXPECT_GT(y, eq.y);
    const NFConstants k = nf_constants(p);
    EXPECT_LT(transform_to_nf({eq.x, y}, k).z, 0.0);
    EXPECT_GT(transform_to_nf({eq.x, eq.y}, k).z, 0.4);
}

TEST(Separatrix, SeparatesSpikingFromQuietOrbits)
{
    const NondimParams p = reference_params();
    const Separatrix s = separatrix(p);
    const double x0 = 0.3;
    const double y0 = separatrix_y_at(s, x0);
    ASSERT_TRUE(std::isfinite(y0));
    struct Excursion {
        double min_x;
        double peak_after_min;
    };
    auto run = [&p](double x, double y) {
        const Trajectory t = rk4_path(DeterministicSystem::original, p, {1e-3, 60.0, 0, 1, {x, y}});
        Excursion e{1.0, 0.0};
        std::size_t at = 0;
        for (std::size_t i = 0; i < t.states.size(); ++i) {
            if (t.states[i][0] < e.min_x) {
                e.min_x = t.states[i][0];
                at = i;
            }
        }
        for (std::size_t i = at; i < t.states.size(); ++i) {
            e.peak_after_min = std::max(e.peak_after_min, t.states[i][0]);
        }
        return e;
    };
    // Above: the prey collapses, then overshoots far past P. Below: a small loop.
    const Excursion above = run(x0, y0 + 0.02);
    const Excursion below = run(x0, y0 - 0.02);
    EXPECT_LT(above.min_x, 0.01);
    EXPECT_GT(above.peak_after_min, 0.75);
    EXPECT_GT(below.min_x, 0.1);
    EXPECT_LT(below.peak_after_min, 0.7);
}

TEST(Separatrix, RequiresStableEquilibrium)
{
    EXPECT_THROW(separatrix(at_h(0.86)), InvalidParameter);
}
