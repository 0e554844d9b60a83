#pragma once

#include <cmath>

namespace outbreak {

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth)
{
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth)
{
    // Split up front so symmetric integrands with narrow peaks are not missed.
    constexpr int pieces = 16;
    const double width = (b - a) / pieces;
    double total = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == pieces) ? b : lo + width;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fhi = f(hi), fmid = f(mid);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += detail::simpson_step(f, lo, flo, hi, fhi, mid, fmid, whole, tol / pieces,
                                      max_depth);
    }
    return total;
}

}  // namespace outbreak
