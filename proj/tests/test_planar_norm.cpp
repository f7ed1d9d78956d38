#include "oracles.hpp"
#include "orlicz/planar_norm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace orlicz;

namespace {

std::vector<PlanarNorm> catalog() {
    const double h = std::numbers::pi / 2;
    // Radius linear in angle is a lattice norm only for constant radius.
    PlanarNorm boundary =
        PlanarNorm::boundary({{0, 1}, {h / 4, 1}, {h / 2, 1}, {3 * h / 4, 1}, {h, 1}});
    return {PlanarNorm::linf(), PlanarNorm::l1(), PlanarNorm::lq(1.5), PlanarNorm::lq(2),
            PlanarNorm::lq(3), boundary};
}

} // namespace

TEST(PlanarNormEvaluate, CatalogExamples) {
    EXPECT_DOUBLE_EQ(PlanarNorm::lq(2)(3, 4), 5);
    EXPECT_DOUBLE_EQ(PlanarNorm::linf()(1, 0.5), 1);
    EXPECT_DOUBLE_EQ(PlanarNorm::l1()(1, 2), 3);
}

TEST(PlanarNormEvaluate, LatticeSymmetry) {
    for (const auto &p : catalog()) {
        EXPECT_DOUBLE_EQ(p(-0.3, 0.7), p(0.3, 0.7)) << p.name();
        EXPECT_DOUBLE_EQ(p(0.3, -0.7), p(0.3, 0.7)) << p.name();
    }
}

TEST(PlanarNormEvaluate, NonFiniteArgumentIsDomainError) {
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_THROW(PlanarNorm::l1()(inf, 0), std::domain_error);
    EXPECT_THROW(PlanarNorm::lq(2)(0, std::nan("")), std::domain_error);
}

TEST(PlanarNormConstruct, RejectsBadParameters) {
    EXPECT_THROW(PlanarNorm::lq(0.5), std::invalid_argument);
    EXPECT_THROW(PlanarNorm::boundary({{0, 1}}), std::invalid_argument);
    EXPECT_THROW(PlanarNorm::boundary({{0, 1}, {1, -1}, {std::numbers::pi / 2, 1}}),
                 std::invalid_argument);
    EXPECT_THROW(PlanarNorm::boundary({{0, 1}, {1.0, 1}}), std::invalid_argument);
}

TEST(PlanarNormConstruct, BoundaryNormalization) {
    const double h = std::numbers::pi / 2;
    EXPECT_TRUE(PlanarNorm::boundary({{0, 1}, {h / 2, 1.2}, {h, 1}}).normalization_checked());
    EXPECT_FALSE(PlanarNorm::boundary({{0, 2}, {h, 1}}).normalization_checked());
    EXPECT_TRUE(PlanarNorm::lq(3).normalization_checked());
}

TEST(LatticeAxioms, CatalogPasses) {
    EXPECT_TRUE(check_lattice_axioms(PlanarNorm::lq(2), 1000, 0).passed());
    EXPECT_TRUE(check_lattice_axioms(PlanarNorm::lq(1.5), 1000, 0).passed());
    for (const auto &p : catalog())
        EXPECT_TRUE(check_lattice_axioms(p, 1000, 7).passed()) << p.name();
}

TEST(LatticeAxioms, RadiusBelowMaxIsReported) {
    const double h = std::numbers::pi / 2;
    // Radius 0.6 at 45 degrees puts the unit sphere inside the max-norm ball.
    PlanarNorm dented = PlanarNorm::boundary({{0, 1}, {h / 2, 0.6}, {h, 1}});
    const ValidationReport r = check_lattice_axioms(dented, 1000, 0);
    ASSERT_FALSE(r.passed());
    bool monotone_or_triangle = false;
    for (const auto &v : r.violations)
        monotone_or_triangle |= v.axiom.find("monoton") != std::string::npos ||
                                v.axiom.find("triangle") != std::string::npos;
    EXPECT_TRUE(monotone_or_triangle);
    EXPECT_FALSE(verify_sandwich(dented, 1000).passed());
}

TEST(Sandwich, CatalogHolds) {
    for (const auto &p : catalog())
        EXPECT_TRUE(verify_sandwich(p, 10000, 3).passed()) << p.name();
    EXPECT_NEAR(PlanarNorm::lq(2)(1, 1), std::sqrt(2.0), 1e-15);
}

TEST(Sandwich, EnvelopesAreExact) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-5, 5);
    for (int i = 0; i < 1000; ++i) {
        const double u = d(rng), v = d(rng);
        EXPECT_EQ(PlanarNorm::linf()(u, v), std::max(std::abs(u), std::abs(v)));
        EXPECT_EQ(PlanarNorm::l1()(u, v), std::abs(u) + std::abs(v));
    }
}

TEST(Modulus, ClosedForms) {
    EXPECT_NEAR(modulus_of_monotonicity(PlanarNorm::l1(), 0.3), 0.3, 1e-3);
    EXPECT_NEAR(modulus_of_monotonicity(PlanarNorm::linf(), 0.5), 0.0, 1e-9);
    EXPECT_NEAR(modulus_of_monotonicity(PlanarNorm::lq(2), 0.6), 0.2, 1e-3);
}

TEST(Modulus, MatchesBruteForceOracle) {
    for (const auto &p : {PlanarNorm::lq(1.5), PlanarNorm::lq(3)}) {
        for (double eps : {0.2, 0.5, 0.8}) {
            const ModulusEstimate e = estimate_modulus_of_monotonicity(p, eps);
            const double brute = oracle::brute_modulus(p, eps, 2e-3);
            EXPECT_NEAR(e.delta, brute, 2e-3 + e.refinement_bound) << p.name() << " eps=" << eps;
        }
    }
}

TEST(Modulus, BoundsAndDomain) {
    for (const auto &p : catalog())
        for (double eps : {0.1, 0.4, 0.9}) {
            const double d = modulus_of_monotonicity(p, eps);
            EXPECT_GE(d, 0.0);
            EXPECT_LE(d, eps + 1e-12);
        }
    EXPECT_THROW(modulus_of_monotonicity(PlanarNorm::l1(), 0.0), std::domain_error);
    EXPECT_THROW(modulus_of_monotonicity(PlanarNorm::l1(), 1.0), std::domain_error);
}

TEST(Modulus, GridConvergence) {
    for (const auto &p : {PlanarNorm::lq(2), PlanarNorm::lq(3)}) {
        const ModulusEstimate coarse = estimate_modulus_of_monotonicity(p, 0.5, 1e-2);
        const ModulusEstimate fine = estimate_modulus_of_monotonicity(p, 0.5, 5e-3);
        EXPECT_LE(std::abs(coarse.delta - fine.delta), coarse.refinement_bound + 1e-12);
    }
}

TEST(Modulus, TableIsMonotoneAndPositiveForStrictlyMonotoneNorms) {
    for (const auto &p : catalog()) {
        const MonotonicityModulusTable t = tabulate_modulus(p, 9);
        for (std::size_t i = 1; i < t.deltas.size(); ++i)
            EXPECT_GE(t.deltas[i], t.deltas[i - 1]) << p.name();
        if (is_strictly_monotone(p))
            for (double d : t.deltas)
                EXPECT_GT(d, 0.0) << p.name();
    }
    EXPECT_FALSE(is_strictly_monotone(PlanarNorm::linf()));
    EXPECT_TRUE(is_strictly_monotone(PlanarNorm::lq(2)));
}

TEST(Modulus, LowerLookupIsConservative) {
    const MonotonicityModulusTable t = tabulate_modulus(PlanarNorm::l1(), 9);
    EXPECT_EQ(t.lower_lookup(0.01), 0.0);
    // delta_L1(eps) = eps, so the lookup returns the grid point just below.
    const double v = t.lower_lookup(0.35);
    EXPECT_LE(v, 0.35);
    EXPECT_GT(v, 0.35 - (t.epsilons[1] - t.epsilons[0]) - 1e-3);
}

TEST(RayStrictness, Examples) {
    EXPECT_TRUE(is_strictly_increasing_on_ray(PlanarNorm::l1(), 4, 100));
    EXPECT_FALSE(is_strictly_increasing_on_ray(PlanarNorm::linf(), 4, 100));
    EXPECT_TRUE(is_strictly_increasing_on_ray(PlanarNorm::lq(2), 4, 100));
    EXPECT_THROW(is_strictly_increasing_on_ray(PlanarNorm::l1(), 0, 100), std::invalid_argument);
}
