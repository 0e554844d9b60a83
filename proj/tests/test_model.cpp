#include <gtest/gtest.h>

#include <random>

#include "outbreak/equilibrium.hpp"
#include "outbreak/error.hpp"
#include "outbreak/model.hpp"

using namespace outbreak;

TEST(Nondimensionalize, CanonicalPresetMapsToReferenceParameters)
{
    const NondimParams p = nondimensionalize(canonical_dimensional_preset());
    // beta = H/K, d = e/(bp), h = m r K/(b p^2), eps = b p / r, evaluated by hand.
    EXPECT_NEAR(p.beta, 0.25 / 1.0, 1e-15);
    EXPECT_NEAR(p.d, 0.0125 / 0.05, 1e-15);
    EXPECT_NEAR(p.h, 0.0455 / 0.05, 1e-14);
    EXPECT_NEAR(p.eps, 0.05, 1e-15);
    EXPECT_EQ(p.sigma1, 0.0);
    EXPECT_EQ(p.sigma2, 0.0);
}

TEST(Nondimensionalize, NoiseScaling)
{
    DimensionalParams d = canonical_dimensional_preset();
    d.zeta1 = 0.1;
    d.zeta2 = 0.02;
    const NondimParams p = nondimensionalize(d);
    EXPECT_NEAR(p.sigma1, 0.1, 1e-15);
    EXPECT_NEAR(p.sigma2, 0.02 / std::sqrt(0.05), 1e-15);
}

TEST(Nondimensionalize, EpsIsBirthPredationOverGrowth)
{
    DimensionalParams d = canonical_dimensional_preset();
    d.r = 3.0;
    d.b = 0.05 * 3.0 / d.p;
    EXPECT_NEAR(nondimensionalize(d).eps, 0.05, 1e-15);
}

TEST(Nondimensionalize, RejectsSlowFastViolationAndNonpositiveInputs)
{
    DimensionalParams d = canonical_dimensional_preset();
    d.b = 1.0;  // b p = r
    EXPECT_THROW(nondimensionalize(d), InvalidParameter);
    d = canonical_dimensional_preset();
    d.H = 0.0;
    EXPECT_THROW(nondimensionalize(d), InvalidParameter);
    d = canonical_dimensional_preset();
    d.zeta1 = -0.1;
    EXPECT_THROW(nondimensionalize(d), InvalidParameter);
}

TEST(Nondimensionalize, RoundTripIsIdentity)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int i = 0; i < 200; ++i) {
        DimensionalParams d{u(rng), u(rng), u(rng), 0.2 * u(rng), 0.02 * u(rng),
                            0.01 * u(rng), 0.05 * u(rng), 0.1 * u(rng), 0.1 * u(rng)};
        if (d.b * d.p >= 0.25 * d.r) {
            continue;
        }
        const DimensionalParams back = redimensionalize(nondimensionalize(d), d.r, d.K, d.p);
        EXPECT_NEAR(back.H, d.H, 1e-12);
        EXPECT_NEAR(back.b, d.b, 1e-12);
        EXPECT_NEAR(back.e, d.e, 1e-12);
        EXPECT_NEAR(back.m, d.m, 1e-12);
        EXPECT_NEAR(back.zeta1, d.zeta1, 1e-12);
        EXPECT_NEAR(back.zeta2, d.zeta2, 1e-12);
    }
}

TEST(Validate, EpsBoundIsEnforcedOrWarned)
{
    NondimParams p = reference_params();
    p.eps = 0.3;
    EXPECT_THROW(validate(p), InvalidParameter);
    EXPECT_NO_THROW(validate(p, EpsPolicy::warn));
    p = reference_params();
    p.beta = 1.0;
    EXPECT_THROW(validate(p, EpsPolicy::warn), InvalidParameter);
    p = reference_params();
    p.sigma2 = -1e-3;
    EXPECT_THROW(validate(p), InvalidParameter);
}

TEST(Drift, PreyAxisIsInvariant)
{
    const NondimParams p = reference_params();
    for (const double y : {0.0, 0.1, 0.5}) {
        EXPECT_EQ(drift({0.0, y}, p)[0], 0.0);
        EXPECT_EQ(drift({0.0, y}, p, DriftVariant::time_rescaled)[0], 0.0);
    }
    for (const double x : {0.0, 0.3, 0.9}) {
        EXPECT_EQ(drift({x, 0.0}, p)[1], 0.0);
    }
}

TEST(Drift, VanishesAtEquilibrium)
{
    const NondimParams p = reference_params();
    const Equilibrium eq = solve_equilibrium(p);
    const Vec2 f = drift({eq.x, eq.y}, p);
    EXPECT_LT(std::abs(f[0]), 1e-12);
    EXPECT_LT(std::abs(f[1]), 1e-12);
}

TEST(Drift, TimeRescaledVariantIsParallel)
{
    const NondimParams p = reference_params();
    const Vec2 full = drift({0.5, 0.3}, p);
    const Vec2 slow = drift({0.5, 0.3}, p, DriftVariant::time_rescaled);
    EXPECT_NEAR(slow[0] / full[0], 0.75, 1e-14);
    EXPECT_NEAR(slow[1] / full[1], 0.75, 1e-14);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.2);
    for (int i = 0; i < 1000; ++i) {
        const State s{u(rng), u(rng)};
        const Vec2 a = drift(s, p);
        const Vec2 b = drift(s, p, DriftVariant::time_rescaled);
        for (int c = 0; c < 2; ++c) {
            EXPECT_NEAR(b[c], (p.beta + s.x) * a[c], 1e-12 * (1.0 + std::abs(b[c])));
        }
    }
}

TEST(Diffusion, MultiplicativeCoefficients)
{
    NondimParams p = reference_params();
    EXPECT_EQ(diffusion({0.4, 0.3}, p)[0], 0.0);
    EXPECT_EQ(diffusion({0.4, 0.3}, p)[1], 0.0);
    p.sigma1 = 0.01;
    p.sigma2 = 0.02;
    EXPECT_EQ(diffusion({0.0, 0.3}, p)[0], 0.0);
    EXPECT_EQ(diffusion({0.3, 0.0}, p)[1], 0.0);
    p.eps = 0.04;
    EXPECT_NEAR(diffusion({1.0, 1.0}, p)[0], 0.05, 1e-15);
    EXPECT_NEAR(diffusion({1.0, 1.0}, p)[1], 0.02, 1e-15);
}
