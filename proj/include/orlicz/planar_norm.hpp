#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orlicz {

/// One point of a user-supplied unit sphere in the closed positive quadrant:
/// the vector radius·(cos angle, sin angle) has norm one.
struct BoundarySample {
    double angle;
    double radius;
};

/// A lattice norm on the plane, normalized so that both unit vectors have
/// norm one. Immutable after construction.
class PlanarNorm {
  public:
    enum class Kind { LInf, L1, Lq, Boundary };

    static PlanarNorm linf();
    static PlanarNorm l1();
    /// q in [1, inf). q == 1 is kept as Lq so the power formula is exercised.
    static PlanarNorm lq(double q);
    /// Samples must start at angle 0, end at angle pi/2, be strictly
    /// increasing in angle and carry positive radii. The radius is
    /// interpolated linearly in angle between samples.
    static PlanarNorm boundary(std::vector<BoundarySample> samples);

    /// p((|u|,|v|)). Throws std::domain_error on non-finite input.
    double operator()(double u, double v) const;

    Kind kind() const noexcept { return kind_; }
    double q() const noexcept { return q_; }
    const std::vector<BoundarySample> &samples() const noexcept { return samples_; }
    /// p((1,0)) and p((0,1)) both equal one within 1e-12.
    bool normalization_checked() const noexcept { return normalized_; }
    std::string name() const;

  private:
    PlanarNorm(Kind kind, double q, std::vector<BoundarySample> samples);
    double boundary_radius(double angle) const;

    Kind kind_;
    double q_ = 0;
    std::vector<BoundarySample> samples_;
    bool normalized_ = true;
};

/// Absolute tolerance for all planar comparisons.
inline constexpr double kPlanarTol = 1e-12;

struct AxiomViolation {
    std::string axiom;
    std::vector<double> point;
    double excess;
};

/// Empty list means "no violation at the sampled budget".
struct ValidationReport {
    std::vector<AxiomViolation> violations;
    std::size_t samples = 0;
    bool passed() const noexcept { return violations.empty(); }
};

/// Sampled check of normalization, lattice property, monotonicity on the
/// positive cone, absolute homogeneity and the triangle inequality.
ValidationReport check_lattice_axioms(const PlanarNorm &p, std::size_t sample_budget,
                                      std::uint64_t seed);

/// max(|u|,|v|) <= p((u,v)) <= |u|+|v| on random points.
ValidationReport verify_sandwich(const PlanarNorm &p, std::size_t sample_budget,
                                 std::uint64_t seed = 0);

/// True iff u -> p((1,u)) increases by more than 1e-12 between consecutive
/// points of a uniform grid on [0, u_max].
bool is_strictly_increasing_on_ray(const PlanarNorm &p, double u_max, std::size_t grid);

/// Scan of the positive quadrant for a pair 0 <= x <= y, x != y with
/// p(x) = p(y): every coordinate step on a grid over [0, extent]^2 must
/// increase p by more than 1e-12.
bool is_strictly_monotone(const PlanarNorm &p, std::size_t grid = 64, double extent = 2.0);

/// Result of the nested grid search for the modulus of monotonicity.
struct ModulusEstimate {
    double delta;
    /// Change of the estimate over the last refinement pass plus the
    /// Lipschitz bound for the final grid spacing.
    double refinement_bound;
};

/// Modulus of monotonicity of (R^2, p) at epsilon in (0,1):
///   inf{ 1 - p(y - x) : 0 <= x <= y, p(x) >= eps, p(y) = 1 }.
///
/// The search runs on the positive cone with p(x) = eps (the binding value):
/// y is parametrized by its angle on the unit sphere, and for each y the
/// admissible angles of x form an interval found by bisection. Both angles
/// are searched on a grid of about 1/resolution points followed by two
/// zoomed refinement passes.
ModulusEstimate estimate_modulus_of_monotonicity(const PlanarNorm &p, double epsilon,
                                                 double resolution = 1e-2);

/// Shorthand for estimate_modulus_of_monotonicity(...).delta.
double modulus_of_monotonicity(const PlanarNorm &p, double epsilon, double resolution = 1e-2);

/// Tabulated modulus on an increasing epsilon grid in (0,1).
struct MonotonicityModulusTable {
    std::vector<double> epsilons;
    std::vector<double> deltas;
    double resolution = 0;
    /// Largest refinement bound over the table.
    double grid_slack = 0;

    /// Conservative lookup: delta at the largest grid epsilon not exceeding
    /// eps (0 below the first grid point). The true modulus is nondecreasing,
    /// so this never overstates it beyond grid_slack.
    double lower_lookup(double eps) const;
};

/// Table on `count` equispaced points of [1/(count+1), 1 - resolution].
MonotonicityModulusTable tabulate_modulus(const PlanarNorm &p, std::size_t count,
                                          double resolution = 1e-2);

MonotonicityModulusTable tabulate_modulus(const PlanarNorm &p, std::vector<double> epsilons,
                                          double resolution = 1e-2);

} // namespace orlicz
