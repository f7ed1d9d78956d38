#include "orlicz/planar_norm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace orlicz {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Lipschitz constant of (phi, psi) -> 1 - p(y(phi) - x(psi)) for normalized
// lattice norms: p <= sqrt(2)|.|_2, |dy/dphi| <= 3 sqrt(2), same for x.
constexpr double kModulusLipschitz = 12.0;

struct GridMin {
    double value;
    double argmin;
    double previous_pass;
    double final_step;
};

// Uniform grid on [lo, hi] with `intervals` cells, then `passes - 1` zooms
// onto the two cells around the current best point.
template <class F>
GridMin refine_min(F &&f, double lo, double hi, std::size_t intervals, int passes) {
    double best = f(lo);
    double best_x = lo;
    double previous = best;
    double step = 0;
    for (int pass = 0; pass < passes; ++pass) {
        previous = best;
        step = (hi - lo) / static_cast<double>(intervals);
        if (step <= 0)
            break;
        for (std::size_t i = 0; i <= intervals; ++i) {
            const double x = i == intervals ? hi : lo + step * static_cast<double>(i);
            const double value = f(x);
            if (value < best) {
                best = value;
                best_x = x;
            }
        }
        const double new_lo = std::max(lo, best_x - step);
        const double new_hi = std::min(hi, best_x + step);
        lo = new_lo;
        hi = new_hi;
    }
    return {best, best_x, previous, step};
}

std::array<double, 2> sphere_point(const PlanarNorm &p, double angle, double scale) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double n = p(c, s);
    return {scale * c / n, scale * s / n};
}

} // namespace

PlanarNorm::PlanarNorm(Kind kind, double q, std::vector<BoundarySample> samples)
    : kind_{kind}, q_{q}, samples_{std::move(samples)} {}

PlanarNorm PlanarNorm::linf() { return PlanarNorm{Kind::LInf, 0, {}}; }

PlanarNorm PlanarNorm::l1() { return PlanarNorm{Kind::L1, 1, {}}; }

PlanarNorm PlanarNorm::lq(double q) {
    if (!(q >= 1) || !std::isfinite(q))
        throw std::invalid_argument("PlanarNorm::lq: q must be a finite real >= 1");
    return PlanarNorm{Kind::Lq, q, {}};
}

PlanarNorm PlanarNorm::boundary(std::vector<BoundarySample> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("PlanarNorm::boundary: need at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [angle, radius] = samples[i];
        if (!std::isfinite(angle) || !std::isfinite(radius) || !(radius > 0))
            throw std::invalid_argument("PlanarNorm::boundary: radii must be positive and finite");
        if (angle < -kPlanarTol || angle > kHalfPi + kPlanarTol)
            throw std::invalid_argument("PlanarNorm::boundary: angles must lie in [0, pi/2]");
        if (i > 0 && !(angle > samples[i - 1].angle))
            throw std::invalid_argument("PlanarNorm::boundary: angles must be increasing");
    }
    if (std::abs(samples.front().angle) > kPlanarTol ||
        std::abs(samples.back().angle - kHalfPi) > kPlanarTol)
        throw std::invalid_argument("PlanarNorm::boundary: samples must span [0, pi/2]");
    samples.front().angle = 0;
    samples.back().angle = kHalfPi;
    PlanarNorm p{Kind::Boundary, 0, std::move(samples)};
    p.normalized_ = std::abs(p.samples_.front().radius - 1) <= kPlanarTol &&
                    std::abs(p.samples_.back().radius - 1) <= kPlanarTol;
    return p;
}

double PlanarNorm::boundary_radius(double angle) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), angle,
                               [](double a, const BoundarySample &s) { return a < s.angle; });
    if (it == samples_.begin())
        return samples_.front().radius;
    if (it == samples_.end())
        return samples_.back().radius;
    const auto &hi = *it;
    const auto &lo = *(it - 1);
    const double t = (angle - lo.angle) / (hi.angle - lo.angle);
    return lo.radius + t * (hi.radius - lo.radius);
}

double PlanarNorm::operator()(double u, double v) const {
    if (!std::isfinite(u) || !std::isfinite(v))
        throw std::domain_error("PlanarNorm: non-finite argument");
    u = std::abs(u);
    v = std::abs(v);
    switch (kind_) {
    case Kind::LInf:
        return std::max(u, v);
    case Kind::L1:
        return u + v;
    case Kind::Lq: {
        const double m = std::max(u, v);
        if (m == 0)
            return 0;
        // scaled to avoid overflow for large arguments
        return m * std::pow(std::pow(u / m, q_) + std::pow(v / m, q_), 1 / q_);
    }
    case Kind::Boundary: {
        if (u == 0 && v == 0)
            return 0;
        if (v == 0)
            return u / samples_.front().radius;
        if (u == 0)
            return v / samples_.back().radius;
        return std::hypot(u, v) / boundary_radius(std::atan2(v, u));
    }
    }
    return 0;
}

std::string PlanarNorm::name() const {
    switch (kind_) {
    case Kind::LInf:
        return "linf";
    case Kind::L1:
        return "l1";
    case Kind::Lq: {
        std::string s = std::to_string(q_);
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.')
            s.pop_back();
        return "lq:" + s;
    }
    case Kind::Boundary:
        return "boundary";
    }
    return {};
}

ValidationReport check_lattice_axioms(const PlanarNorm &p, std::size_t sample_budget,
                                      std::uint64_t seed) {
    ValidationReport report;
    report.samples = sample_budget;
    if (std::abs(p(1, 0) - 1) > kPlanarTol)
        report.violations.push_back({"normalization", {1, 0}, std::abs(p(1, 0) - 1)});
    if (std::abs(p(0, 1) - 1) > kPlanarTol)
        report.violations.push_back({"normalization", {0, 1}, std::abs(p(0, 1) - 1)});

    std::mt19937_64 rng{seed};
    std::uniform_real_distribution<double> coord{-2.0, 2.0};
    std::uniform_real_distribution<double> scalar{-3.0, 3.0};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    for (std::size_t i = 0; i < sample_budget; ++i) {
        const double u = coord(rng), v = coord(rng);
        const double s = coord(rng), t = coord(rng);
        const double lambda = scalar(rng);
        const double pu = p(u, v);

        if (const double e = std::abs(pu - p(std::abs(u), std::abs(v))); e > kPlanarTol)
            report.violations.push_back({"lattice", {u, v}, e});

        const double scaled = std::abs(lambda) * pu;
        if (const double e = std::abs(p(lambda * u, lambda * v) - scaled);
            e > kPlanarTol * std::max(1.0, scaled))
            report.violations.push_back({"homogeneity", {u, v, lambda}, e});

        const double sum = pu + p(s, t);
        if (const double e = p(u + s, v + t) - sum; e > kPlanarTol * std::max(1.0, sum))
            report.violations.push_back({"triangle", {u, v, s, t}, e});

        const double a1 = std::abs(u) * unit(rng), a2 = std::abs(v) * unit(rng);
        if (const double e = p(a1, a2) - pu; e > kPlanarTol)
            report.violations.push_back({"monotonicity", {a1, a2, std::abs(u), std::abs(v)}, e});
    }
    return report;
}

ValidationReport verify_sandwich(const PlanarNorm &p, std::size_t sample_budget,
                                 std::uint64_t seed) {
    ValidationReport report;
    report.samples = sample_budget;
    std::mt19937_64 rng{seed};
    std::uniform_real_distribution<double> coord{-2.0, 2.0};
    for (std::size_t i = 0; i < sample_budget; ++i) {
        const double u = coord(rng), v = coord(rng);
        const double value = p(u, v);
        const double lower = std::max(std::abs(u), std::abs(v));
        const double upper = std::abs(u) + std::abs(v);
        if (value < lower - kPlanarTol)
            report.violations.push_back({"lower", {u, v}, lower - value});
        if (value > upper + kPlanarTol)
            report.violations.push_back({"upper", {u, v}, value - upper});
    }
    return report;
}

bool is_strictly_increasing_on_ray(const PlanarNorm &p, double u_max, std::size_t grid) {
    if (!(u_max > 0) || grid < 2)
        throw std::invalid_argument("is_strictly_increasing_on_ray: need u_max > 0, grid >= 2");
    double previous = p(1, 0);
    for (std::size_t i = 1; i < grid; ++i) {
        const double u = u_max * static_cast<double>(i) / static_cast<double>(grid - 1);
        const double value = p(1, u);
        if (!(value > previous + kPlanarTol))
            return false;
        previous = value;
    }
    return true;
}

bool is_strictly_monotone(const PlanarNorm &p, std::size_t grid, double extent) {
    const double h = extent / static_cast<double>(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            const double u = h * static_cast<double>(i);
            const double v = h * static_cast<double>(j);
            const double base = p(u, v);
            if (!(p(u + h, v) > base + kPlanarTol) || !(p(u, v + h) > base + kPlanarTol))
                return false;
        }
    }
    return true;
}

ModulusEstimate estimate_modulus_of_monotonicity(const PlanarNorm &p, double epsilon,
                                                 double resolution) {
    if (!(epsilon > 0 && epsilon < 1))
        throw std::domain_error("modulus_of_monotonicity: epsilon must lie in (0,1)");
    if (!(resolution > 0 && resolution < 1))
        throw std::invalid_argument("modulus_of_monotonicity: resolution must lie in (0,1)");
    const auto intervals = static_cast<std::size_t>(std::ceil(1 / resolution));
    constexpr int kPasses = 3;
    constexpr int kBisections = 60;

    // For fixed y on the unit sphere: admissible x = eps·dir(psi)/p(dir(psi))
    // with x <= y. The first coordinate of x decreases and the second
    // increases along the sphere, so the admissible psi form an interval.
    auto inner = [&](double phi) {
        const auto y = sphere_point(p, phi, 1.0);
        double psi_lo = 0;
        if (sphere_point(p, 0, epsilon)[0] > y[0]) {
            double bad = 0, good = kHalfPi;
            for (int i = 0; i < kBisections; ++i) {
                const double mid = 0.5 * (bad + good);
                (sphere_point(p, mid, epsilon)[0] <= y[0] ? good : bad) = mid;
            }
            psi_lo = good;
        }
        double psi_hi = kHalfPi;
        if (sphere_point(p, kHalfPi, epsilon)[1] > y[1]) {
            double good = 0, bad = kHalfPi;
            for (int i = 0; i < kBisections; ++i) {
                const double mid = 0.5 * (bad + good);
                (sphere_point(p, mid, epsilon)[1] <= y[1] ? good : bad) = mid;
            }
            psi_hi = good;
        }
        if (psi_lo > psi_hi)
            psi_lo = psi_hi = phi; // x = eps·y is always admissible
        auto gap = [&](double psi) {
            const auto x = sphere_point(p, psi, epsilon);
            return 1 - p(std::max(0.0, y[0] - x[0]), std::max(0.0, y[1] - x[1]));
        };
        return refine_min(gap, psi_lo, psi_hi, intervals, kPasses).value;
    };

    const GridMin outer = refine_min(inner, 0.0, kHalfPi, intervals, kPasses);
    const double delta = std::clamp(outer.value, 0.0, epsilon);
    const double bound =
        std::abs(outer.previous_pass - outer.value) + kModulusLipschitz * outer.final_step;
    return {delta, bound};
}

double modulus_of_monotonicity(const PlanarNorm &p, double epsilon, double resolution) {
    return estimate_modulus_of_monotonicity(p, epsilon, resolution).delta;
}

double MonotonicityModulusTable::lower_lookup(double eps) const {
    auto it = std::upper_bound(epsilons.begin(), epsilons.end(), eps);
    if (it == epsilons.begin())
        return 0;
    return deltas[static_cast<std::size_t>(it - epsilons.begin()) - 1];
}

MonotonicityModulusTable tabulate_modulus(const PlanarNorm &p, std::vector<double> epsilons,
                                          double resolution) {
    MonotonicityModulusTable table;
    table.resolution = resolution;
    if (!std::is_sorted(epsilons.begin(), epsilons.end()))
        throw std::invalid_argument("tabulate_modulus: epsilon grid must be increasing");
    table.epsilons = std::move(epsilons);
    table.deltas.reserve(table.epsilons.size());
    for (double eps : table.epsilons) {
        const auto est = estimate_modulus_of_monotonicity(p, eps, resolution);
        table.deltas.push_back(est.delta);
        table.grid_slack = std::max(table.grid_slack, est.refinement_bound);
    }
    // Suffix minimum: the exact modulus is nondecreasing, so this only lowers
    // grid overestimates.
    for (std::size_t i = table.deltas.size(); i-- > 1;)
        table.deltas[i - 1] = std::min(table.deltas[i - 1], table.deltas[i]);
    return table;
}

MonotonicityModulusTable tabulate_modulus(const PlanarNorm &p, std::size_t count,
                                          double resolution) {
    std::vector<double> eps(count);
    for (std::size_t i = 0; i < count; ++i)
        eps[i] = (1 - resolution) * static_cast<double>(i + 1) / static_cast<double>(count);
    return tabulate_modulus(p, std::move(eps), resolution);
}

} // namespace orlicz
