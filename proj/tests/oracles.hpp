#pragma once
// Independent reference computations used to cross-check the library. They
// only evaluate Phi and p pointwise and never call the search routines.

#include "orlicz/measure_space.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/planar_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

inline double modular(const orlicz::OrliczFunction &phi, const std::vector<double> &w,
                      const std::vector<double> &x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += w[i] * phi(x[i]);
    return s;
}

/// min of g(k) = p(1, I(kx))/k over `points` log-spaced k in [lo, hi].
inline double log_grid_min(const orlicz::OrliczFunction &phi, const orlicz::PlanarNorm &p,
                           const std::vector<double> &w, const std::vector<double> &x,
                           std::size_t points = 10000, double lo = 1e-8, double hi = 1e8) {
    double best = std::numeric_limits<double>::infinity();
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < points; ++i) {
        const double k = std::exp(a + (b - a) * static_cast<double>(i) /
                                          static_cast<double>(points - 1));
        std::vector<double> kx(x);
        for (double &e : kx)
            e *= k;
        const double m = modular(phi, w, kx);
        if (std::isfinite(m))
            best = std::min(best, p(1.0, m) / k);
    }
    return best;
}

/// Smallest lambda on a geometric grid (ratio 1 + step) above the last
/// dyadic miss with I(x/lambda) <= 1. The Luxemburg norm lies in
/// [result / (1 + step), result].
inline double luxemburg_grid(const orlicz::OrliczFunction &phi, const std::vector<double> &w,
                             const std::vector<double> &x, double step = 1e-5) {
    auto fits = [&](double l) {
        std::vector<double> s(x);
        for (double &e : s)
            e /= l;
        return modular(phi, w, s) <= 1;
    };
    double lambda = 1.0;
    while (fits(lambda / 2))
        lambda /= 2;
    while (!fits(lambda))
        lambda *= 2;
    double l = lambda / 2;
    while (!fits(l))
        l *= 1 + step;
    return l;
}

/// Brute-force planar modulus of monotonicity: y on the positive unit sphere
/// and x on the positive sphere of radius eps, both by angle with spacing
/// about `resolution`, restricted to x <= y. An upper estimate of the infimum.
inline double brute_modulus(const orlicz::PlanarNorm &p, double eps, double resolution = 1e-3) {
    const double half_pi = std::numbers::pi / 2;
    const auto n = static_cast<std::size_t>(std::ceil(half_pi / resolution));
    std::vector<double> yc(n + 1), ys(n + 1), xc(n + 1), xs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = half_pi * static_cast<double>(i) / static_cast<double>(n);
        const double c = std::cos(t), s = std::sin(t);
        const double r = 1.0 / p(c, s);
        yc[i] = r * c;
        ys[i] = r * s;
        xc[i] = eps * r * c;
        xs[i] = eps * r * s;
    }
    double best = 1;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            if (xc[j] <= yc[i] + 1e-15 && xs[j] <= ys[i] + 1e-15)
                best = std::min(best, 1 - p(yc[i] - xc[j], ys[i] - xs[j]));
    return std::max(best, 0.0);
}

/// Closed forms for Phi(u) = u^2 on finite atoms with s = sum w x^2:
/// L1 minimum of (1 + k^2 s)/k is 2 sqrt(s); Lq(2) minimum of
/// sqrt(1 + k^4 s^2)/k is sqrt(2 s); LInf gives sqrt(s).
inline double power2_l1(double s) { return 2 * std::sqrt(s); }
inline double power2_lq2(double s) { return std::sqrt(2 * s); }
inline double power2_linf(double s) { return std::sqrt(s); }

inline double lq2_modulus(double eps) { return 1 - std::sqrt(1 - eps * eps); }

} // namespace oracle
