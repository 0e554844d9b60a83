#include "outbreak/normal_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "outbreak/equilibrium.hpp"
#include "outbreak/error.hpp"
#include "outbreak/rng.hpp"

namespace outbreak {

NFConstants nf_constants(const NondimParams& p)
{
    NFConstants k;
    k.alpha_star = alpha_star(p);
    k.beta = p.beta;
    k.d = p.d;
    k.h = p.h;
    k.eps = p.eps;
    const HopfOffsets off = hopf_offsets(p);
    k.delta = off.delta;
    k.gamma = off.gamma;
    k.mu = off.mu;
    k.c1 = 1.0 - p.beta - 3.0 * k.alpha_star;
    k.c2 = fold_gap(p);
    k.y_star = (1.0 - k.alpha_star) * (p.beta + k.alpha_star);
    if (std::abs(k.c1) < 1e-8) {
        throw DegenerateScaling("1 - beta - 3 alpha* vanishes; the (l, z) scaling is singular");
    }
    if (std::abs(k.gamma) < 1e-12) {
        throw DegenerateScaling("gamma vanishes; the (l, z) scaling is singular");
    }
    return k;
}

NfPoint transform_to_nf(State s, const NFConstants& k)
{
    const double ag = k.alpha_star * k.gamma;
    const double p = (s.x - k.alpha_star) / std::sqrt(k.eps);
    const double q = -(s.y - k.y_star) / k.eps;
    const double xi = k.alpha_star * q + k.c1 * p * p - ag / (2.0 * k.c1);
    return {k.c1 * p / ag, -k.c1 * xi / ag};
}

State transform_from_nf(NfPoint pt, const NFConstants& k)
{
    const double ag = k.alpha_star * k.gamma;
    const double p = ag * pt.l / k.c1;
    const double xi = -ag * pt.z / k.c1;
    const double q = (xi - k.c1 * p * p + ag / (2.0 * k.c1)) / k.alpha_star;
    return {k.alpha_star + std::sqrt(k.eps) * p, k.y_star - k.eps * q};
}

std::array<double, 5> nf_polynomials(double l, double z, const NFConstants& k)
{
    const double as = k.alpha_star;
    const double g = k.gamma;
    const double c1 = k.c1;
    const double ba = k.beta + as;
    const double s = z - 0.5 + as * g * l * l;
    const double lin = as - k.d * ba + g / (2.0 * c1) - g * z / c1;
    const double l2 = l * l;

    std::array<double, 5> a{};
    a[0] = lin * l - as * g * g * k.c2 / (c1 * c1) * l2 * l;
    a[1] = (k.delta - k.h * (1.0 - as) * ba * ba) * s - 2.0 * as * g * l2 * lin +
           2.0 * as * as * g * g * g * k.c2 * l2 * l2 / (c1 * c1);
    a[2] = as * g * l / c1 * (1.0 - k.d - 2.0 * k.h * k.y_star) * s;
    a[3] = -k.h * ba * g / c1 * s * s;
    a[4] = -k.h * as * g * g * l / (c1 * c1) * s * s;
    return a;
}

Vec2 nf_field(double l, double z, const NFConstants& k)
{
    const auto a = nf_polynomials(l, z, k);
    const double se = std::sqrt(k.eps);
    return {0.5 - z + a[0] * se,
            k.mu + 2.0 * k.alpha_star * k.gamma * l * z + a[1] * se + a[2] * k.eps +
                a[3] * k.eps * se + a[4] * k.eps * k.eps};
}

Vec2 reduced_field(double l, double z, double mu, const NFConstants& k)
{
    return {0.5 - z, mu + 2.0 * k.alpha_star * k.gamma * l * z};
}

double first_integral(double l, double z, const NFConstants& k)
{
    return z * std::exp(-2.0 * k.alpha_star * k.gamma * l * l - 2.0 * z + 1.0);
}

double StochNFCoeffs::C(double L) const
{
    const double arg = k.beta + k.alpha_star + std::sqrt(k.eps) * k.alpha_star * k.gamma * L / k.c1;
    return std::sqrt(std::max(arg, 0.0));
}

double StochNFCoeffs::G1(double L) const
{
    return 1.0 + std::sqrt(k.eps) * k.gamma * L / k.c1;
}

double StochNFCoeffs::G2(double L) const
{
    return -2.0 * k.alpha_star * k.gamma * L * G1(L);
}

double StochNFCoeffs::G3(double L, double Z) const
{
    const double s = Z - 0.5 + k.alpha_star * k.gamma * L * L;
    return k.y_star + k.eps * k.gamma * s / k.c1;
}

std::array<double, 5> StochNFCoeffs::B(double L, double Z) const
{
    auto b = nf_polynomials(L, Z, k);
    const double as = k.alpha_star;
    const double g = k.gamma;
    const double c1 = k.c1;
    const double s2 = sigma_hat1 * sigma_hat1;
    b[1] -= as * g * g * s2 * (2.0 * k.beta + 3.0 * as) * L / c1;
    b[2] -= as * g * g * g * s2 * (k.beta + 3.0 * as) * L * L / (c1 * c1);
    b[3] -= as * as * g * g * g * g * s2 * L * L * L / (c1 * c1 * c1);
    return b;
}

Vec2 StochNFCoeffs::drift(double L, double Z) const
{
    const auto b = B(L, Z);
    const double se = std::sqrt(k.eps);
    return {0.5 - Z + b[0] * se,
            mu_hat + 2.0 * k.alpha_star * k.gamma * L * Z + b[1] * se + b[2] * k.eps +
                b[3] * k.eps * se + b[4] * k.eps * k.eps};
}

NfNoise StochNFCoeffs::noise(double L, double Z) const
{
    const double c = C(L);
    return {sigma_hat1 * c * G1(L), c * sigma_hat1 * G2(L), c * sigma_hat2 * G3(L, Z)};
}

double StochNFCoeffs::l_milstein_term(double L) const
{
    const double c = C(L);
    if (c == 0.0) {
        return 0.0;
    }
    const double se = std::sqrt(k.eps);
    const double dc = se * k.alpha_star * k.gamma / k.c1 / (2.0 * c);
    const double dg1 = se * k.gamma / k.c1;
    const double g = sigma_hat1 * c * G1(L);
    return g * sigma_hat1 * (dc * G1(L) + c * dg1);
}

StochNFCoeffs stoch_nf_coeffs(const NondimParams& p)
{
    StochNFCoeffs c;
    c.k = nf_constants(p);
    c.sigma1 = p.sigma1;
    c.sigma2 = p.sigma2;
    const double scale = c.k.c1 / (c.k.gamma * std::pow(p.eps, 0.75));
    c.sigma_hat1 = scale * p.sigma1;
    c.sigma_hat2 = scale * p.sigma2;
    c.mu_hat = c.k.mu -
               c.k.alpha_star * c.k.gamma * (p.beta + c.k.alpha_star) * c.sigma_hat1 * c.sigma_hat1;
    return c;
}

namespace {

struct LinearCoefficients {
    double rate;  // gamma alpha*
    double noise1;
    double noise2;
};

LinearCoefficients linear_coefficients(const StochNFCoeffs& c)
{
    const double root = std::sqrt(c.k.beta + c.k.alpha_star);
    const double rate = c.k.gamma * c.k.alpha_star;
    return {rate, -root * rate * c.sigma_hat1, root * c.k.y_star * c.sigma_hat2};
}

std::size_t grid_steps(const TimeGrid& g)
{
    if (!(g.dt > 0.0) || !(g.t1 > g.t0)) {
        throw InvalidParameter("time grid needs dt > 0 and t1 > t0");
    }
    return static_cast<std::size_t>(std::llround((g.t1 - g.t0) / g.dt));
}

// Stochastic Heun: trapezoidal drift, noise coefficient at the step midpoint. The noise is
// additive, so this is weak order 2.
template <class Sink>
void linear_heun(const StochNFCoeffs& c, double Z0, const TimeGrid& grid, std::uint64_t seed,
                 LinearNoise noise, Sink&& sink)
{
    const LinearCoefficients lc = linear_coefficients(c);
    const std::size_t n = grid_steps(grid);
    const double dt = grid.dt;
    const double sqdt = std::sqrt(dt);
    auto f = [&](double t, double z) { return c.mu_hat + lc.rate * t * z; };
    GaussianStream rng(seed);
    double z = Z0;
    sink(z);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid.t0 + static_cast<double>(i) * dt;
        const Vec2 w = rng.normal_pair();
        const double weight = noise == LinearNoise::time_weighted ? t + 0.5 * dt : 1.0;
        const double dw = sqdt * (lc.noise1 * weight * w[0] + lc.noise2 * w[1]);
        const double f0 = f(t, z);
        const double pred = z + f0 * dt + dw;
        z += 0.5 * (f0 + f(t + dt, pred)) * dt + dw;
        sink(z);
    }
}

}  // namespace

std::vector<double> linearized_Z_path(const StochNFCoeffs& c, double Z0, const TimeGrid& grid,
                                      std::uint64_t seed, LinearNoise noise)
{
    std::vector<double> path;
    path.reserve(grid_steps(grid) + 1);
    linear_heun(c, Z0, grid, seed, noise, [&path](double z) { path.push_back(z); });
    return path;
}

std::vector<double> linearized_Z_terminal(const StochNFCoeffs& c, double Z0,
                                          const TimeGrid& grid, std::uint64_t seed_base,
                                          std::size_t paths, LinearNoise noise)
{
    grid_steps(grid);
    std::vector<double> out(paths);
    const auto n = static_cast<std::int64_t>(paths);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double last = Z0;
        linear_heun(c, Z0, grid, path_seed(seed_base, static_cast<std::uint64_t>(i)), noise,
                  [&last](double z) { last = z; });
        out[static_cast<std::size_t>(i)] = last;
    }
    return out;
}

ZtMoments zt_moments_at_scale(const StochNFCoeffs& c, double P, double Z0, LinearNoise noise)
{
    const LinearCoefficients lc = linear_coefficients(c);
    const double k = lc.rate;
    if (!(k > 0.0)) {
        throw UndefinedScale("gamma alpha* must be positive");
    }
    if (!(P > 0.0)) {
        throw UndefinedScale("horizontal scale P must be positive");
    }
    const double ba = c.k.beta + c.k.alpha_star;
    const double s1 = c.sigma_hat1 * c.sigma_hat1;
    const double s2 = c.sigma_hat2 * c.sigma_hat2;
    const double ys2 = c.k.y_star * c.k.y_star;

    ZtMoments m;
    m.P = P;
    m.T = 4.0 * P;
    const double lo = -2.0 * P;
    const double hi = 2.0 * P;
    const double i_mean = adaptive_simpson([k](double s) { return std::exp(-0.5 * k * s * s); }, lo, hi);
    const double i0 = adaptive_simpson([k](double s) { return std::exp(-k * s * s); }, lo, hi);
    const double i1 = noise == LinearNoise::time_weighted
                          ? adaptive_simpson([k](double s) { return s * s * std::exp(-k * s * s); },
                                             lo, hi)
                          : i0;
    const double grow = std::exp(2.0 * k * P * P);
    m.mean_exact = Z0 + c.mu_hat * grow * i_mean;
    m.var_exact = ba * grow * grow * (k * k * s1 * i1 + ys2 * s2 * i0);
    m.mean_asymptotic = Z0 + c.mu_hat * grow * std::sqrt(2.0 * std::numbers::pi / k);
    m.var_bound = ba * grow * grow * std::sqrt(std::numbers::pi / k) * (0.5 * k * s1 + ys2 * s2);
    m.bound_holds = m.var_exact <= m.var_bound * (1.0 + 1e-6);
    return m;
}

ZtMoments zt_moments(const StochNFCoeffs& c, double a, double c0, double Z0, LinearNoise noise)
{
    if (!(a > 0.0 && a < 1.0) || !(c0 > 0.0)) {
        throw InvalidParameter("spike estimate needs 0 < a < 1 and c0 > 0");
    }
    const double scaled = std::abs(c0 * c.mu_hat);
    if (scaled == 0.0) {
        throw UndefinedScale("mu_hat = 0: the horizontal scale P diverges");
    }
    if (scaled >= 1.0) {
        throw UndefinedScale("|c0 mu_hat| >= 1: no positive horizontal scale P");
    }
    const double k = c.k.gamma * c.k.alpha_star;
    if (!(k > 0.0)) {
        throw UndefinedScale("gamma alpha* must be positive");
    }
    const double P = std::sqrt(-a * std::log(scaled) / (2.0 * k));
    return zt_moments_at_scale(c, P, Z0, noise);
}

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double kappa(double mu_hat, double sigma_hat1, double sigma_hat2, double alpha_star,
             double gamma, double beta)
{
    const double ga = gamma * alpha_star;
    const double ys = (1.0 - alpha_star) * (beta + alpha_star);
    const double spread = (0.5 * ga * sigma_hat1 * sigma_hat1 + ys * ys * sigma_hat2 * sigma_hat2) *
                          (beta + alpha_star);
    return mu_hat * std::pow(std::numbers::pi, 0.25) / (std::pow(ga, 0.25) * std::sqrt(spread));
}

SpikeProbability repeated_spike_probability(const StochNFCoeffs& c)
{
    SpikeProbability out;
    if (c.sigma_hat1 == 0.0 && c.sigma_hat2 == 0.0) {
        out.zero_noise = true;
        if (c.mu_hat > 0.0) {
            out.kappa = std::numeric_limits<double>::infinity();
            out.prob = 0.0;
        } else if (c.mu_hat < 0.0) {
            out.kappa = -std::numeric_limits<double>::infinity();
            out.prob = 1.0;
        } else {
            out.kappa = 0.0;
            out.prob = 0.5;
        }
        return out;
    }
    out.kappa = kappa(c.mu_hat, c.sigma_hat1, c.sigma_hat2, c.k.alpha_star, c.k.gamma, c.k.beta);
    out.prob = normal_cdf(-out.kappa);
    return out;
}

SpikeEstimate spike_estimate(const StochNFCoeffs& c, double a, double c0, double Z0,
                             LinearNoise noise)
{
    SpikeEstimate est;
    est.a = a;
    est.c0 = c0;
    est.moments = zt_moments(c, a, c0, Z0, noise);
    est.probability = repeated_spike_probability(c);
    return est;
}

}  // namespace outbreak
