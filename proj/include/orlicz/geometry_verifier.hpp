#pragma once

#include "orlicz/measure_space.hpp"
#include "orlicz/norm_engine.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/planar_norm.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orlicz {

/// Checkable statements, in a fixed order used for reporting:
///   T1  sandwich max <= p <= sum and the LInf <= p <= L1 norm ordering
///   T2  norm axioms of the generated norm
///   L1  attainment of the infimum when A = +inf
///   L2  1 <= ||x|| <= 1 + I(x) when I(lambda x) = +inf for lambda > 1
///   T3  almost isometric copy of l^inf when Delta_2 fails at infinity
///   T4  isometric copy of l^inf when a(Phi) > 0
///   T5  strict convexity
///   T6  strict monotonicity iff a(Phi) = 0
///   T7  ||y - x|| <= 1 - delta_p(I(x)) for 0 <= x <= y, ||y|| = 1
///   T8  strict and lower local uniform monotonicity when a(Phi) = 0
///   T9  uniform monotonicity iff a(Phi) = 0 and Delta_2; otherwise the
///       upper local counterexample
///   R2  order continuity iff Delta_2 (tail probe)
///   R3  I(x_n) -> 0 forces ||x_n|| -> 0 iff a(Phi) = 0 and Delta_2
enum class TheoremId { T1, T2, L1, L2, T3, T4, T5, T6, T7, T8, T9, R2, R3 };

inline constexpr std::array<TheoremId, 13> kAllTheorems{
    TheoremId::T1, TheoremId::T2, TheoremId::L1, TheoremId::L2, TheoremId::T3,
    TheoremId::T4, TheoremId::T5, TheoremId::T6, TheoremId::T7, TheoremId::T8,
    TheoremId::T9, TheoremId::R2, TheoremId::R3};

std::string to_string(TheoremId id);
/// Throws std::invalid_argument on an unknown id.
TheoremId parse_theorem_id(const std::string &text);

enum class ReportStatus {
    Passed,           ///< no violation; expected counterexamples confirmed
    Failed,           ///< at least one violation
    HypothesisNotMet, ///< the statement does not apply to this (Phi, p, space)
};

std::string to_string(ReportStatus status);

/// One checked instance of `lhs <= rhs`. Inputs are values on the atoms of
/// the space the check ran on; suites are seeded, so re-running the same
/// configuration replays the record.
struct CaseRecord {
    std::string check;
    std::size_t trial = 0;
    std::vector<double> x;
    std::vector<double> y;
    double lhs = 0;
    double rhs = 0;

    double slack() const noexcept { return rhs - lhs; }
};

struct TheoremReport {
    TheoremId id;
    std::size_t trials = 0;
    std::vector<CaseRecord> violations;
    /// Constructed counterexamples that the statement predicts.
    std::vector<CaseRecord> witnesses;
    ReportStatus status = ReportStatus::Passed;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::string> notes;

    bool passed() const noexcept { return status != ReportStatus::Failed; }
};

struct VerifierConfig {
    OrliczFunction phi;
    PlanarNorm p;
    std::shared_ptr<const MeasureSpace> space;
    std::uint64_t seed = 0;
    /// Random trials per suite.
    std::size_t budget = 200;
    /// Slack for norm comparisons.
    double tol = 1e-9;
    /// Grid resolution for the planar modulus of monotonicity.
    double modulus_resolution = 1e-2;
    /// Overrides the Delta_2 regime derived from the space.
    std::optional<Delta2Regime> regime;
    /// Truncation size of l^inf witnesses.
    std::size_t witness_n = 4;
    double witness_epsilon = 0.1;
    double witness_eta = 0.01;
    double witness_big_m = 1e9;
    /// Length of the sequences in the R2, R3 and T9 constructions (<= 64).
    std::size_t sequence_length = 20;
    std::vector<double> epsilon_grid{0.25, 0.5, 0.75};
};

/// Delta_2 regime matching the space: unit weights (counting) -> AtZero, any
/// infinite atom -> Global, other finite spaces -> AtInfinity.
Delta2Regime suitable_regime(const MeasureSpace &space);

/// The regime used by a configuration (override or suitable_regime).
Delta2Regime effective_regime(const VerifierConfig &config);

TheoremReport run_suite(TheoremId id, const VerifierConfig &config);
std::vector<TheoremReport> run_suites(const std::vector<TheoremId> &ids,
                                      const VerifierConfig &config);

/// Each pair is rescaled by 1/||y|| and checked for
/// ||y - x|| <= 1 - delta(I(x)) + table.grid_slack + 1e-6 when I(x) in (0,1).
TheoremReport verify_decomposition_estimate(const OrliczFunction &phi, const PlanarNorm &p,
                                            const std::vector<DominatedPair> &pairs,
                                            const MonotonicityModulusTable &table);

TheoremReport strict_monotonicity_scan(const VerifierConfig &config);
TheoremReport strict_convexity_scan(const VerifierConfig &config);

/// Positive disjointly supported elements x_1..x_n and the map
/// P z = sum z_j x_j.
struct LinfEmbeddingWitness {
    std::size_t n = 0;
    std::shared_ptr<const MeasureSpace> space;
    std::vector<SimpleFunction> basis;
    double epsilon = 0;
    double eta = 0;
    bool exact = false;

    SimpleFunction apply(const std::vector<double> &z) const;
};

struct ExactWitness {};
struct ApproximateWitness {
    double epsilon = 0.1;
    double eta = 0.01;
    double big_m = 1e9;
};

/// Exact mode: n infinite atoms, x_j = a(Phi) on atom j; requires a(Phi) > 0.
/// Approximate mode: atom j carries level v_j with
/// Phi((1+eta) v_j) / Phi(v_j) >= M 2^j / eps and weight
/// w_j = eps 2^-j / Phi(v_j), so I(x_j) <= eps/2^j and I((1+eta) x_j) >= M;
/// requires Phi to fail Delta_2 at infinity.
/// Throws PreconditionError when the mode's hypothesis fails.
LinfEmbeddingWitness build_linf_witness(const OrliczFunction &phi, std::size_t n,
                                        const ExactWitness &mode);
LinfEmbeddingWitness build_linf_witness(const OrliczFunction &phi, std::size_t n,
                                        const ApproximateWitness &mode);

/// Checks the witness on `samples` random z in [-1,1]^n: exact mode
/// ||Pz|| = ||z||_inf within 1e-12; approximate mode
/// ||z||_inf/(1+eta) - 1e-6 <= ||Pz|| <= (1+eps)||z||_inf + 1e-6.
TheoremReport check_linf_witness(const LinfEmbeddingWitness &witness, const OrliczFunction &phi,
                                 const PlanarNorm &p, std::size_t samples, std::uint64_t seed);

struct LowerLocalEstimate {
    /// min I(x) over the sampled 0 <= x <= y with ||x|| >= eps; empty when
    /// no sample reaches eps.
    std::optional<double> delta_hat;
    std::size_t feasible = 0;
    /// Largest ||y - x|| - (1 - delta_p(delta_hat)) over feasible samples.
    double worst_excess = 0;
    bool bound_holds = true;
};

/// Requires a(Phi) = 0, y >= 0 on finite atoms and ||y|| = 1 (within 1e-9);
/// throws PreconditionError otherwise.
LowerLocalEstimate lower_local_um_estimate(const OrliczFunction &phi, const PlanarNorm &p,
                                           const SimpleFunction &y, double epsilon,
                                           const MonotonicityModulusTable &table,
                                           std::size_t samples, std::uint64_t seed);

TheoremReport uniform_monotonicity_probe(const VerifierConfig &config);
TheoremReport lower_local_monotonicity_suite(const VerifierConfig &config);
TheoremReport modular_norm_equivalence_probe(const VerifierConfig &config);
TheoremReport order_continuity_probe(const VerifierConfig &config);

/// One atom of weight w and level v with w Phi(v) = budget, where w = 2^-m
/// is chosen from m in [m_min, m_max] to make the generated norm as large as
/// possible (stopping early once it reaches `target`).
struct SteepPiece {
    long double weight;
    double level;
    double norm;
};
SteepPiece steep_piece(const OrliczFunction &phi, const PlanarNorm &p, double budget, int m_min,
                       int m_max, double target);

/// A level v with Phi(v) > 0 and Phi(stretch v) >= ratio Phi(v): the first
/// dyadic level that works, refined downward by bisection. Throws
/// PreconditionError when no level up to 2^1000 works.
double ratio_level(const OrliczFunction &phi, double stretch, long double ratio);

} // namespace orlicz
