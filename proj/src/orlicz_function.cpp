#include "orlicz/orlicz_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {

constexpr long double kInfL = std::numeric_limits<long double>::infinity();

long double exp_minus_series(long double u) {
    // e^u - u - 1 = sum_{k>=2} u^k / k!
    long double term = u * u / 2;
    long double sum = term;
    for (int k = 3; k < 40 && term > sum * 1e-21L; ++k) {
        term *= u / k;
        sum += term;
    }
    return sum;
}

std::string trim_number(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

} // namespace

OrliczFunction::OrliczFunction(Kind kind, double q, double a, std::vector<Breakpoint> points)
    : kind_{kind}, q_{q}, a_{a}, points_{std::move(points)} {}

OrliczFunction OrliczFunction::power(double q) {
    if (!(q >= 1) || !std::isfinite(q))
        throw std::invalid_argument("OrliczFunction::power: q must be a finite real >= 1");
    OrliczFunction phi{Kind::Power, q, 0, {}};
    phi.zero_bound_ = 0;
    phi.slope_ = q > 1 ? ExtendedReal::infinity() : ExtendedReal{1.0};
    return phi;
}

OrliczFunction OrliczFunction::exp_minus() {
    OrliczFunction phi{Kind::ExpMinus, 0, 0, {}};
    phi.zero_bound_ = 0;
    phi.slope_ = ExtendedReal::infinity();
    return phi;
}

OrliczFunction OrliczFunction::flat_then_power(double a, double q) {
    if (!(a > 0) || !std::isfinite(a))
        throw std::invalid_argument("OrliczFunction::flat_then_power: a must be positive");
    if (!(q >= 1) || !std::isfinite(q))
        throw std::invalid_argument("OrliczFunction::flat_then_power: q must be a finite real >= 1");
    OrliczFunction phi{Kind::FlatThenPower, q, a, {}};
    phi.zero_bound_ = a;
    phi.slope_ = q > 1 ? ExtendedReal::infinity() : ExtendedReal{1.0};
    return phi;
}

OrliczFunction OrliczFunction::piecewise_linear(std::vector<Breakpoint> points) {
    if (points.size() < 2)
        throw std::invalid_argument("OrliczFunction::piecewise_linear: need at least two points");
    if (points.front().u != 0 || points.front().value != 0)
        throw std::invalid_argument("OrliczFunction::piecewise_linear: first point must be (0,0)");
    double previous_slope = -std::numeric_limits<double>::infinity();
    bool positive = false;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const auto &lo = points[i - 1];
        const auto &hi = points[i];
        if (!std::isfinite(hi.u) || !std::isfinite(hi.value))
            throw std::invalid_argument("OrliczFunction::piecewise_linear: non-finite point");
        if (!(hi.u > lo.u))
            throw std::invalid_argument("OrliczFunction::piecewise_linear: u must be increasing");
        if (hi.value < 0)
            throw std::invalid_argument("OrliczFunction::piecewise_linear: values must be >= 0");
        const double slope = (hi.value - lo.value) / (hi.u - lo.u);
        if (slope < previous_slope - 1e-12 * std::max(1.0, std::abs(previous_slope)))
            throw std::invalid_argument("OrliczFunction::piecewise_linear: not convex");
        previous_slope = slope;
        positive = positive || hi.value > 0;
    }
    if (!positive)
        throw std::invalid_argument("OrliczFunction::piecewise_linear: identically zero");
    OrliczFunction phi{Kind::PiecewiseLinear, 0, 0, std::move(points)};
    phi.slope_ = ExtendedReal{previous_slope};
    phi.zero_bound_ = zero_set_bound(phi);
    return phi;
}

long double OrliczFunction::wide(long double u) const {
    u = std::fabs(u);
    switch (kind_) {
    case Kind::Power:
        return std::pow(u, static_cast<long double>(q_));
    case Kind::ExpMinus:
        return u < 0.1L ? exp_minus_series(u) : std::expm1(u) - u;
    case Kind::FlatThenPower:
        return u <= a_ ? 0.0L : std::pow(u - a_, static_cast<long double>(q_));
    case Kind::PiecewiseLinear: {
        auto it = std::upper_bound(points_.begin(), points_.end(), static_cast<double>(u),
                                   [](double x, const Breakpoint &b) { return x < b.u; });
        if (it == points_.end())
            it = points_.end() - 1;
        const auto &hi = *it;
        const auto &lo = *(it - 1);
        const long double slope = (static_cast<long double>(hi.value) - lo.value) / (hi.u - lo.u);
        return std::max(0.0L, lo.value + slope * (u - lo.u));
    }
    }
    return 0;
}

std::string OrliczFunction::name() const {
    switch (kind_) {
    case Kind::Power:
        return "power:" + trim_number(q_);
    case Kind::ExpMinus:
        return "exp_minus";
    case Kind::FlatThenPower:
        return "flat_then_power:" + trim_number(a_) + "," + trim_number(q_);
    case Kind::PiecewiseLinear: {
        std::string s = "pwl:";
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (i)
                s += ",";
            s += trim_number(points_[i].u) + "," + trim_number(points_[i].value);
        }
        return s;
    }
    }
    return {};
}

double zero_set_bound(const OrliczFunction &phi) {
    switch (phi.kind()) {
    case OrliczFunction::Kind::Power:
    case OrliczFunction::Kind::ExpMinus:
        return 0;
    case OrliczFunction::Kind::FlatThenPower:
        return phi.flat_width();
    case OrliczFunction::Kind::PiecewiseLinear:
        break;
    }
    // Bisection between the last sampled zero and the first sampled positive value.
    const auto &pts = phi.breakpoints();
    double lo = 0;
    double hi = pts.back().u;
    for (const auto &b : pts) {
        if (b.value > 0) {
            hi = b.u;
            break;
        }
        lo = b.u;
    }
    if (phi.wide(hi) == 0) // zero up to the last breakpoint, positive slope after
        return hi;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (phi.wide(mid) == 0 ? lo : hi) = mid;
    }
    return lo;
}

ExtendedReal probe_asymptotic_slope(const OrliczFunction &phi) {
    long double ratio = 0;
    for (int j = 0; j <= 60; ++j) {
        const long double u = std::ldexp(1.0L, j);
        ratio = phi.wide(u) / u;
        if (!std::isfinite(ratio) || ratio > 1e12L)
            return ExtendedReal::infinity();
    }
    return ExtendedReal{static_cast<double>(ratio)};
}

std::string to_string(Delta2Regime regime) {
    switch (regime) {
    case Delta2Regime::AtZero:
        return "at_zero";
    case Delta2Regime::AtInfinity:
        return "at_infinity";
    case Delta2Regime::Global:
        return "global";
    }
    return {};
}

namespace {

Delta2Report scan_delta2(const OrliczFunction &phi, Delta2Regime regime, double lo, double hi,
                         const Delta2Grid &grid) {
    Delta2Report report{regime, Delta2Holds{1.0}, lo, hi, grid};
    const double t_lo = std::log2(lo);
    const double t_hi = std::log2(hi);
    const auto steps =
        static_cast<long>(std::ceil((t_hi - t_lo) * static_cast<double>(grid.points_per_octave)));
    long double sup_ratio = 0;
    for (long i = 0; i <= steps; ++i) {
        const double t = std::min(t_hi, t_lo + static_cast<double>(i) / grid.points_per_octave);
        const long double u = std::exp2(static_cast<long double>(t));
        const long double f1 = phi.wide(u);
        const long double f2 = phi.wide(2 * u);
        if (f1 == 0) {
            if (f2 > 0) {
                report.verdict = Delta2Fails{static_cast<double>(u), std::numeric_limits<double>::infinity()};
                return report;
            }
            continue;
        }
        const long double ratio = std::isfinite(f2) && std::isfinite(f1) ? f2 / f1 : kInfL;
        sup_ratio = std::max(sup_ratio, ratio);
        if (ratio > grid.failure_threshold) {
            report.verdict = Delta2Fails{static_cast<double>(u), static_cast<double>(ratio)};
            return report;
        }
    }
    report.verdict = Delta2Holds{static_cast<double>(sup_ratio) * (1 + 1e-9)};
    return report;
}

} // namespace

Delta2Report delta2_check(const OrliczFunction &phi, Delta2Regime regime, const Delta2Grid &grid) {
    const double a = phi.zero_bound();
    const double lo = std::exp2(grid.log2_min);
    const double hi = std::exp2(grid.log2_max);
    const double zero_end = std::max(1.0, 2 * a);
    const double inf_start = std::max(1.0, 4 * a);
    switch (regime) {
    case Delta2Regime::AtZero:
        return scan_delta2(phi, regime, lo, zero_end, grid);
    case Delta2Regime::AtInfinity:
        return scan_delta2(phi, regime, inf_start, hi, grid);
    case Delta2Regime::Global:
        break;
    }
    const auto at_zero = scan_delta2(phi, Delta2Regime::AtZero, lo, zero_end, grid);
    const auto at_inf = scan_delta2(phi, Delta2Regime::AtInfinity, inf_start, hi, grid);
    Delta2Report report{Delta2Regime::Global, Delta2Holds{1.0}, lo, hi, grid};
    if (!at_zero.holds())
        report.verdict = at_zero.verdict;
    else if (!at_inf.holds())
        report.verdict = at_inf.verdict;
    else
        report.verdict = Delta2Holds{std::max(std::get<Delta2Holds>(at_zero.verdict).K,
                                              std::get<Delta2Holds>(at_inf.verdict).K)};
    return report;
}

ExtendedReal young_conjugate(const OrliczFunction &phi, double v, const ConjugateGrid &grid) {
    const long double s = std::fabs(static_cast<long double>(v));
    if (s == 0)
        return ExtendedReal{0.0};
    const ExtendedReal slope = phi.asymptotic_slope();
    if (slope.is_finite() && s > slope.value())
        return ExtendedReal::infinity();

    auto objective = [&](long double u) { return s * u - phi.wide(u); };
    long double upper = grid.u_max;
    const long double cap = std::ldexp(1.0L, 60);
    while (upper < cap && objective(upper) > objective(upper / 2))
        upper *= 2;

    const std::size_t n = std::max<std::size_t>(grid.points, 3);
    std::size_t best = 0;
    long double best_value = objective(0);
    for (std::size_t i = 1; i < n; ++i) {
        const long double u = upper * static_cast<long double>(i) / static_cast<long double>(n - 1);
        const long double value = objective(u);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    // ternary search of the concave objective around the best grid point
    const long double step = upper / static_cast<long double>(n - 1);
    long double lo = best == 0 ? 0 : step * static_cast<long double>(best - 1);
    long double hi = std::min(upper, step * static_cast<long double>(best + 1));
    for (int i = 0; i < 200 && hi - lo > 1e-15L * std::max(1.0L, hi); ++i) {
        const long double m1 = lo + (hi - lo) / 3;
        const long double m2 = hi - (hi - lo) / 3;
        if (objective(m1) < objective(m2))
            lo = m1;
        else
            hi = m2;
    }
    best_value = std::max(best_value, objective(0.5L * (lo + hi)));
    return ExtendedReal{std::max(0.0, static_cast<double>(best_value))};
}

ConvexityProbe strict_convexity_probe(const OrliczFunction &phi, std::size_t sample_budget,
                                      std::uint64_t seed) {
    auto affine_on = [&](double u1, double u2) {
        const long double mid = phi.wide(0.5L * (static_cast<long double>(u1) + u2));
        const long double avg = 0.5L * (phi.wide(u1) + phi.wide(u2));
        if (!std::isfinite(avg))
            return false;
        return avg - mid <= 1e-12L * avg;
    };

    std::vector<std::pair<double, double>> structured;
    double range = 4;
    switch (phi.kind()) {
    case OrliczFunction::Kind::FlatThenPower:
        structured.emplace_back(-phi.flat_width() / 2, phi.flat_width() / 2);
        range = 2 * (phi.flat_width() + 1);
        break;
    case OrliczFunction::Kind::PiecewiseLinear: {
        const auto &pts = phi.breakpoints();
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double w = pts[i].u - pts[i - 1].u;
            structured.emplace_back(pts[i - 1].u + w / 4, pts[i].u - w / 4);
        }
        structured.emplace_back(pts.back().u + 1, pts.back().u + 2);
        range = 2 * pts.back().u + 2;
        break;
    }
    default:
        break;
    }
    for (const auto &[u1, u2] : structured)
        if (affine_on(u1, u2))
            return {false, std::make_pair(u1, u2)};

    std::mt19937_64 rng{seed};
    std::uniform_real_distribution<double> center{-range, range};
    std::uniform_real_distribution<double> log_width{-3.0, 0.0};
    for (std::size_t i = 0; i < sample_budget; ++i) {
        const double c = center(rng);
        const double h = range * std::pow(10.0, log_width(rng)) / 2;
        if (affine_on(c - h, c + h))
            return {false, std::make_pair(c - h, c + h)};
    }
    return {true, std::nullopt};
}

} // namespace orlicz
