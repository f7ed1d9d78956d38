#pragma once

#include "orlicz/measure_space.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/planar_norm.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace orlicz {

/// A verifier or engine precondition that the given input cannot meet.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// ‖x‖_Φ = inf{λ > 0 : I_Φ(x/λ) <= 1}, by bisection on λ. Returns +inf when x
/// is nonzero on an infinite atom and a(Φ) = 0 (x is then outside L^Φ).
ExtendedReal luxemburg_norm(const OrliczFunction &phi, const SimpleFunction &x,
                            double rel_tol = 1e-12);

struct NormSearch {
    double k_floor = 1e-12;
    double k_cap = 1e12;
    double rel_tol = 1e-10; ///< on log k
};

struct NormResult {
    double value = 0;
    /// A minimizer of g(k) = p((1, I_Φ(kx)))/k, when one was found.
    std::optional<double> k_star;
    /// False when the infimum sits at the k_cap (K(x) empty at desk scale),
    /// for x = 0, and for x outside the space (value +inf).
    bool attained = false;
    std::pair<double, double> bracket{0, 0};
    std::size_t evaluations = 0;
};

/// ‖x‖_{Φ,p} = inf_{k>0} (1/k) p((1, I_Φ(kx))).
///
/// g is unimodal in log k: with s = 1/k it is p((s, s I_Φ(x/s))), a monotone
/// norm of a linear and a convex (perspective) function of s. The search
/// brackets the minimum by doubling/halving from k = 1 and finishes with a
/// golden-section search on log k.
///
/// Infinite atoms are handled exactly: they contribute 0 to I_Φ(kx) for
/// k <= a(Φ)/max|x| over those atoms and +inf beyond, so that endpoint is
/// part of the search domain and evaluated without rounding.
NormResult generated_norm(const OrliczFunction &phi, const PlanarNorm &p, const SimpleFunction &x,
                          const NormSearch &search = {});

/// generated_norm(...).value
double norm_value(const OrliczFunction &phi, const PlanarNorm &p, const SimpleFunction &x);

/// g(k) itself, with the same infinite-atom semantics as generated_norm.
double amemiya_objective(const OrliczFunction &phi, const PlanarNorm &p, const SimpleFunction &x,
                         double k);

struct DualSearch {
    std::size_t max_sweeps = 200;
    double tol = 1e-12;
    ConjugateGrid conjugate{1e3, 48};
};

struct DualNormResult {
    double value;
    /// The maximizing y found: I_{Φ*}(y) <= 1 and ∫xy dμ = value.
    SimpleFunction certificate;
    std::size_t sweeps;
};

/// Orlicz norm sup{ |∫ x y dμ| : I_{Φ*}(y) <= 1 } from below.
///
/// The dual ball constraint is split into per-atom budgets b_i = w_i Φ*(y_i)
/// summing to one; y_i = sup{y : Φ*(y) <= b_i / w_i}, which is concave in b_i
/// and equals inf_u (b_i/w_i + Φ(u))/u. Pairwise budget transfers (exact 1-D
/// golden-section ascent) are swept until the improvement stalls. The final y
/// is checked against young_conjugate and shrunk if its dual modular exceeds
/// one, so the value is a lower bound. x must vanish on infinite atoms.
DualNormResult orlicz_dual_norm(const OrliczFunction &phi, const SimpleFunction &x,
                                const DualSearch &search = {});

struct LemmaBounds {
    bool lower_ok;
    bool upper_ok;
    double norm;
    double modular;
};

/// 1 <= ‖x‖_{Φ,p} <= 1 + I_Φ(x) for x with I_Φ(x) finite and I_Φ(λx) = +inf
/// for every λ > 1 (checked at λ = 1 + 1e-6). Throws PreconditionError when
/// the hypothesis fails; p must satisfy p((1,0)) = p((0,1)) = 1.
LemmaBounds lemma_bounds_check(const OrliczFunction &phi, const PlanarNorm &p,
                               const SimpleFunction &x);

} // namespace orlicz
