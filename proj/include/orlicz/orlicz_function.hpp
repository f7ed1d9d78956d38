#pragma once

#include "orlicz/extended_real.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace orlicz {

struct Breakpoint {
    double u;
    double value;
};

/// Even convex Phi: R -> [0, inf) with Phi(0) = 0, not identically zero.
///
/// Catalog kinds:
///   Power(q)            |u|^q
///   ExpMinus            e^|u| - |u| - 1
///   FlatThenPower(a, q) max(0, |u| - a)^q
///   PiecewiseLinear     linear interpolation of breakpoints, extended past
///                       the last breakpoint with the last slope
class OrliczFunction {
  public:
    enum class Kind { Power, ExpMinus, FlatThenPower, PiecewiseLinear };

    static OrliczFunction power(double q);
    static OrliczFunction exp_minus();
    static OrliczFunction flat_then_power(double a, double q);
    /// Breakpoints must start at (0,0), be strictly increasing in u and have
    /// nondecreasing slopes with at least one positive value.
    static OrliczFunction piecewise_linear(std::vector<Breakpoint> points);

    /// Phi(|u|). May return +inf when the value exceeds the double range.
    double operator()(double u) const { return static_cast<double>(wide(u)); }
    /// Phi(|u|) in extended precision, used for modulars on tiny-weight atoms.
    long double wide(long double u) const;

    /// a(Phi) = sup{u >= 0 : Phi(u) = 0}.
    double zero_bound() const noexcept { return zero_bound_; }
    /// A = lim Phi(u)/u as u -> inf.
    ExtendedReal asymptotic_slope() const noexcept { return slope_; }

    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return q_; }
    double flat_width() const noexcept { return a_; }
    const std::vector<Breakpoint> &breakpoints() const noexcept { return points_; }
    std::string name() const;

  private:
    OrliczFunction(Kind kind, double q, double a, std::vector<Breakpoint> points);

    Kind kind_;
    double q_ = 0;
    double a_ = 0;
    std::vector<Breakpoint> points_;
    double zero_bound_ = 0;
    ExtendedReal slope_;
};

/// a(Phi): exact for the analytic kinds, bisection on the zero set to 1e-12
/// for piecewise-linear functions.
double zero_set_bound(const OrliczFunction &phi);

/// Dyadic estimate of lim Phi(u)/u from u = 2^j, j <= 60; +inf once the
/// ratio exceeds 1e12 (or Phi leaves the floating range).
ExtendedReal probe_asymptotic_slope(const OrliczFunction &phi);

enum class Delta2Regime { AtZero, AtInfinity, Global };

std::string to_string(Delta2Regime regime);

struct Delta2Grid {
    double log2_min = -40;
    double log2_max = 40;
    int points_per_octave = 8;
    double failure_threshold = 1e8;
};

struct Delta2Holds {
    double K;
};
struct Delta2Fails {
    double u;
    double ratio; ///< +inf when Phi(u) = 0 < Phi(2u)
};

struct Delta2Report {
    Delta2Regime regime;
    std::variant<Delta2Holds, Delta2Fails> verdict;
    /// Sampled u range, log-uniform with grid.points_per_octave per octave.
    double range_lo;
    double range_hi;
    Delta2Grid grid;

    bool holds() const noexcept { return std::holds_alternative<Delta2Holds>(verdict); }
};

/// Sampled Delta_2 classification. Ranges:
///   AtZero      [2^log2_min, max(1, 2a(Phi))]
///   AtInfinity  [max(1, 4a(Phi)), 2^log2_max]
///   Global      both; holds iff both hold, K is the larger constant.
/// The zero range extends past a(Phi) so a flat zone counts as a failure.
Delta2Report delta2_check(const OrliczFunction &phi, Delta2Regime regime,
                          const Delta2Grid &grid = {});

struct ConjugateGrid {
    double u_max = 1e3;
    std::size_t points = 256;
};

/// Phi*(v) = sup_{u >= 0} (|v| u - Phi(u)). Returns +inf when |v| exceeds
/// the asymptotic slope. Otherwise a grid search over [0, U] refined by
/// ternary search; U is doubled (up to 2^60) while the objective still grows
/// at the right end.
ExtendedReal young_conjugate(const OrliczFunction &phi, double v, const ConjugateGrid &grid = {});

struct ConvexityProbe {
    bool strictly_convex;
    std::optional<std::pair<double, double>> witness;
};

/// Midpoint test. A pair u1 != u2 with Phi((u1+u2)/2) equal to the average
/// of the endpoint values (relative 1e-12) is a witness against strict
/// convexity. Affine pieces known from the kind are probed first.
ConvexityProbe strict_convexity_probe(const OrliczFunction &phi, std::size_t sample_budget,
                                      std::uint64_t seed = 0);

} // namespace orlicz
