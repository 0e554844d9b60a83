#pragma once

#include <cstdint>
#include <vector>

#include "outbreak/model.hpp"
#include "outbreak/types.hpp"

namespace outbreak {

/// Constants of the transformation to the normal form near the singular Hopf point.
struct NFConstants {
    double alpha_star{};
    double beta{};
    double d{};
    double h{};
    double eps{};
    double delta{};
    double gamma{};
    double mu{};
    double c1{};  ///< 1 - beta - 3 alpha*, denominator of the final rescaling
    double c2{};  ///< 1 - beta - 2 alpha*
    double y_star{};  ///< (1 - alpha*)(beta + alpha*)
};

struct NfPoint {
    double l{};
    double z{};
};

/// Throws DegenerateScaling when |c1| < 1e-8.
NFConstants nf_constants(const NondimParams& p);

/// (x, y) -> (l, z): shift to the Hopf point, scale by sqrt(eps) and -eps, straighten
/// the pdot = 0 nullcline, rescale.
NfPoint transform_to_nf(State s, const NFConstants& k);
State transform_from_nf(NfPoint q, const NFConstants& k);

/// Correction polynomials A0..A4 of the deterministic normal form.
std::array<double, 5> nf_polynomials(double l, double z, const NFConstants& k);

/// ldot = 1/2 - z + A0 sqrt(eps),
/// zdot = mu + 2 alpha* gamma l z + A1 sqrt(eps) + A2 eps + A3 eps^{3/2} + A4 eps^2.
Vec2 nf_field(double l, double z, const NFConstants& k);

/// The eps = 0 truncation.
Vec2 reduced_field(double l, double z, double mu, const NFConstants& k);

/// Q = z exp(-2 alpha* gamma l^2 - 2 z + 1), conserved by reduced_field when mu = 0.
double first_integral(double l, double z, const NFConstants& k);

struct NfNoise {
    double l_dB1{};
    double z_dB1{};
    double z_dB2{};
};

/// Coefficients of the stochastic normal form, obtained by applying Ito's formula to
/// the transformation chain.
struct StochNFCoeffs {
    NFConstants k;
    double sigma1{};
    double sigma2{};
    double sigma_hat1{};
    double sigma_hat2{};
    double mu_hat{};

    /// sqrt of the time-change factor beta + x expressed in L.
    double C(double L) const;
    double G1(double L) const;
    double G2(double L) const;
    double G3(double L, double Z) const;
    /// B0..B4: A_i plus the Ito corrections proportional to sigma_hat1^2.
    std::array<double, 5> B(double L, double Z) const;

    Vec2 drift(double L, double Z) const;
    NfNoise noise(double L, double Z) const;
    /// g dg/dL for the L noise, which depends on L only.
    double l_milstein_term(double L) const;
};

StochNFCoeffs stoch_nf_coeffs(const NondimParams& p);

/// Noise of the linearized Z equation near the separatrix.
enum class LinearNoise {
    constant,       ///< sqrt(beta+a*) (-gamma a* sh1 dB1 + (1-a*)(beta+a*) sh2 dB2)
    time_weighted,  ///< the dB1 coefficient multiplied by t (the linearization of G2)
};

struct TimeGrid {
    double t0{};
    double t1{};
    double dt{1e-3};
};

/// Stochastic Heun path of dZ = (mu_hat + gamma a* t Z) dt + noise on the grid.
std::vector<double> linearized_Z_path(const StochNFCoeffs& c, double Z0, const TimeGrid& grid,
                                      std::uint64_t seed,
                                      LinearNoise noise = LinearNoise::constant);

/// Terminal values Z_T of `paths` independent linearized paths (seed_base + i),
/// computed in parallel.
std::vector<double> linearized_Z_terminal(const StochNFCoeffs& c, double Z0,
                                          const TimeGrid& grid, std::uint64_t seed_base,
                                          std::size_t paths,
                                          LinearNoise noise = LinearNoise::constant);

struct ZtMoments {
    double P{};  ///< horizontal scale: 2 gamma a* P^2 = -a log|c0 mu_hat|
    double T{};  ///< 4 P
    double mean_exact{};
    double var_exact{};
    double mean_asymptotic{};
    double var_bound{};
    bool bound_holds{};
};

/// Gaussian moments of Z_T for the linearized equation run over [-2P, 2P]. Exact values
/// by adaptive Simpson quadrature; the asymptotic mean and the variance bound use the
/// full Gaussian integrals. Throws UndefinedScale when mu_hat = 0 or |c0 mu_hat| >= 1.
ZtMoments zt_moments(const StochNFCoeffs& c, double a, double c0, double Z0,
                     LinearNoise noise = LinearNoise::constant);

/// Same quadrature with P supplied directly.
ZtMoments zt_moments_at_scale(const StochNFCoeffs& c, double P, double Z0,
                              LinearNoise noise = LinearNoise::constant);

struct SpikeProbability {
    double kappa{};
    double prob{};          ///< Phi(-kappa), approximate P{N = 0}
    bool zero_noise{false}; ///< both sigma_hat vanish; prob is the deterministic limit
};

/// kappa = mu_hat pi^{1/4} / ((gamma a*)^{1/4} sqrt((gamma a* sh1^2 / 2
///         + (1-a*)^2 (beta+a*)^2 sh2^2)(beta + a*))).
double kappa(double mu_hat, double sigma_hat1, double sigma_hat2, double alpha_star,
             double gamma, double beta);

SpikeProbability repeated_spike_probability(const StochNFCoeffs& c);

struct SpikeEstimate {
    double a{};
    double c0{};
    ZtMoments moments;
    SpikeProbability probability;
};

SpikeEstimate spike_estimate(const StochNFCoeffs& c, double a = 0.5, double c0 = 1.0,
                             double Z0 = 0.0, LinearNoise noise = LinearNoise::constant);

/// Standard normal CDF via std::erfc.
double normal_cdf(double x);

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int max_depth = 50);

}  // namespace outbreak

#include "outbreak/detail/quadrature.hpp"
