#include "orlicz/geometry_verifier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace orlicz;

namespace {

const long double kInf = std::numeric_limits<long double>::infinity();

VerifierConfig config(OrliczFunction phi, PlanarNorm p,
                      std::shared_ptr<const MeasureSpace> space = MeasureSpace::counting(4),
                      std::size_t budget = 100) {
    return VerifierConfig{.phi = std::move(phi), .p = std::move(p), .space = std::move(space),
                          .seed = 1, .budget = budget};
}

double metric(const TheoremReport &r, const std::string &name) {
    for (const auto &[k, v] : r.metrics)
        if (k == name)
            return v;
    ADD_FAILURE() << "missing metric " << name;
    return std::nan("");
}

} // namespace

TEST(TheoremIds, ParseAndPrint) {
    for (TheoremId id : kAllTheorems)
        EXPECT_EQ(parse_theorem_id(to_string(id)), id);
    EXPECT_EQ(parse_theorem_id("t7"), TheoremId::T7);
    EXPECT_THROW(parse_theorem_id("T10"), std::invalid_argument);
    EXPECT_EQ(to_string(ReportStatus::HypothesisNotMet), "hypothesis_not_met");
}

TEST(Regime, SuitableMapping) {
    EXPECT_EQ(suitable_regime(*MeasureSpace::counting(3)), Delta2Regime::AtZero);
    EXPECT_EQ(suitable_regime(*MeasureSpace::make({1, 0.5L})), Delta2Regime::AtInfinity);
    EXPECT_EQ(suitable_regime(*MeasureSpace::make({1, kInf})), Delta2Regime::Global);
    VerifierConfig c = config(OrliczFunction::power(2), PlanarNorm::l1());
    EXPECT_EQ(effective_regime(c), Delta2Regime::AtZero);
    c.regime = Delta2Regime::Global;
    EXPECT_EQ(effective_regime(c), Delta2Regime::Global);
}

TEST(DecompositionEstimate, Examples) {
    const auto phi = OrliczFunction::power(2);
    const auto p = PlanarNorm::l1();
    const auto table = tabulate_modulus(p, 99);
    auto s = MeasureSpace::counting(3);
    const SimpleFunction y(s, {0.35, 0, 0});
    std::vector<DominatedPair> pairs{{y.scaled(0.5), y}, {SimpleFunction(s), y}, {y, y}};
    const TheoremReport r = verify_decomposition_estimate(phi, p, pairs, table);
    EXPECT_EQ(r.status, ReportStatus::Passed);
    EXPECT_TRUE(r.violations.empty());
    EXPECT_GE(metric(r, "min_slack"), 0.0);
}

TEST(DecompositionEstimate, LinfIsNotStrictlyMonotone) {
    const auto p = PlanarNorm::linf();
    auto s = MeasureSpace::counting(2);
    const SimpleFunction y(s, {1, 1});
    const TheoremReport r = verify_decomposition_estimate(OrliczFunction::power(2), p,
                                                          {{y.scaled(0.5), y}}, tabulate_modulus(p, 9));
    EXPECT_EQ(r.status, ReportStatus::HypothesisNotMet);
}

TEST(StrictMonotonicity, PowerPasses) {
    VerifierConfig c = config(OrliczFunction::power(2), PlanarNorm::l1(), MeasureSpace::counting(4), 500);
    const TheoremReport r = strict_monotonicity_scan(c);
    EXPECT_EQ(r.status, ReportStatus::Passed);
    EXPECT_GE(r.trials, 500u);
    EXPECT_TRUE(r.witnesses.empty());
}

TEST(StrictMonotonicity, FlatZoneWitnessesReplay) {
    VerifierConfig c = config(OrliczFunction::flat_then_power(1, 2), PlanarNorm::lq(2));
    const TheoremReport r = strict_monotonicity_scan(c);
    EXPECT_EQ(r.status, ReportStatus::Passed);
    ASSERT_FALSE(r.witnesses.empty());
    for (const auto &w : r.witnesses) {
        const SimpleFunction z(c.space, w.x), y(c.space, w.y);
        EXPECT_FALSE(z == y);
        EXPECT_TRUE(leq(y, z));
        EXPECT_LE(std::abs(norm_value(c.phi, c.p, z) - norm_value(c.phi, c.p, y)), 1e-9);
    }
}

TEST(StrictMonotonicity, FullSupportFallsBackToRandomSearch) {
    VerifierConfig c = config(OrliczFunction::flat_then_power(1, 2), PlanarNorm::l1(),
                              MeasureSpace::counting(1));
    const TheoremReport r = strict_monotonicity_scan(c);
    EXPECT_NE(r.status, ReportStatus::Failed);
    ASSERT_FALSE(r.notes.empty());
    EXPECT_NE(r.notes.front().find("random search"), std::string::npos);
}

TEST(StrictConvexity, Examples) {
    const TheoremReport pass = strict_convexity_scan(config(OrliczFunction::power(2), PlanarNorm::l1(),
                                                            MeasureSpace::counting(4), 200));
    EXPECT_EQ(pass.status, ReportStatus::Passed);
    EXPECT_GT(metric(pass, "min_midpoint_gap"), 1e-12);

    const auto pwl = OrliczFunction::piecewise_linear({{0, 0}, {1, 1}, {2, 3}, {3, 6}});
    EXPECT_EQ(strict_convexity_scan(config(pwl, PlanarNorm::l1())).status,
              ReportStatus::HypothesisNotMet);
    EXPECT_EQ(strict_convexity_scan(config(OrliczFunction::power(2), PlanarNorm::linf())).status,
              ReportStatus::HypothesisNotMet);
}

TEST(StrictConvexity, ImpliesStrictMonotonicity) {
    for (const auto &p : {PlanarNorm::l1(), PlanarNorm::lq(2), PlanarNorm::lq(3)}) {
        VerifierConfig c = config(OrliczFunction::exp_minus(), p);
        if (strict_convexity_scan(c).status == ReportStatus::Passed)
            EXPECT_EQ(strict_monotonicity_scan(c).status, ReportStatus::Passed) << p.name();
    }
}

TEST(LinfWitness, ExactExamples) {
    const auto flat = OrliczFunction::flat_then_power(1, 2);
    const LinfEmbeddingWitness w = build_linf_witness(flat, 3, ExactWitness{});
    EXPECT_TRUE(w.exact);
    ASSERT_EQ(w.basis.size(), 3u);
    for (const auto &p : {PlanarNorm::l1(), PlanarNorm::linf(), PlanarNorm::lq(2)}) {
        EXPECT_EQ(norm_value(flat, p, w.apply({1, -1, 0.5})), 1) << p.name();
        EXPECT_EQ(norm_value(flat, p, w.apply({0, 0, 0})), 0);
        EXPECT_EQ(check_linf_witness(w, flat, p, 50, 0).status, ReportStatus::Passed);
    }
    // Disjoint nonnegative supports.
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t a = 0; a < w.space->size(); ++a) {
                EXPECT_GE(w.basis[i][a], 0);
                if (i != j)
                    EXPECT_EQ(w.basis[i][a] * w.basis[j][a], 0);
            }
    EXPECT_THROW(build_linf_witness(OrliczFunction::power(2), 3, ExactWitness{}), PreconditionError);
}

TEST(LinfWitness, ApproximateExpMinus) {
    const auto phi = OrliczFunction::exp_minus();
    const LinfEmbeddingWitness w = build_linf_witness(phi, 4, ApproximateWitness{0.1, 0.01, 1e9});
    EXPECT_FALSE(w.exact);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_LE(modular(phi, w.basis[j]).value(), 0.1 / std::ldexp(1.0, static_cast<int>(j) + 1) * (1 + 1e-9));
        EXPECT_GE(modular(phi, w.basis[j].scaled(1.01)).as_double(), 1e9);
    }
    for (const auto &p : {PlanarNorm::l1(), PlanarNorm::lq(2), PlanarNorm::linf()})
        EXPECT_EQ(check_linf_witness(w, phi, p, 50, 3).status, ReportStatus::Passed) << p.name();
    EXPECT_THROW(build_linf_witness(OrliczFunction::power(2), 4, ApproximateWitness{}),
                 PreconditionError);
}

TEST(DecompositionSuite, CatalogPasses) {
    for (const auto &phi : {OrliczFunction::power(2), OrliczFunction::exp_minus()})
        for (const auto &p : {PlanarNorm::l1(), PlanarNorm::lq(2)})
            EXPECT_EQ(run_suite(TheoremId::T7, config(phi, p)).status, ReportStatus::Passed);
}

TEST(LowerLocal, Examples) {
    const auto phi = OrliczFunction::power(2);
    const auto p = PlanarNorm::l1();
    const auto table = tabulate_modulus(p, 99);
    auto s = MeasureSpace::counting(4);
    SimpleFunction y(s, {1, 1, 1, 1});
    y = y.scaled(1 / norm_value(phi, p, y));
    const LowerLocalEstimate e = lower_local_um_estimate(phi, p, y, 0.5, table, 500, 0);
    ASSERT_TRUE(e.delta_hat);
    EXPECT_GT(*e.delta_hat, 0);
    EXPECT_TRUE(e.bound_holds);
    EXPECT_GT(e.feasible, 0u);

    const LowerLocalEstimate none = lower_local_um_estimate(phi, p, y, 1.5, table, 200, 0);
    EXPECT_FALSE(none.delta_hat);
    EXPECT_EQ(none.feasible, 0u);

    EXPECT_THROW(lower_local_um_estimate(phi, p, y.scaled(2), 0.5, table, 10, 0), PreconditionError);
    EXPECT_THROW(lower_local_um_estimate(OrliczFunction::flat_then_power(1, 2), p, y, 0.5, table, 10, 0),
                 PreconditionError);
}

TEST(UniformMonotonicity, PowerGivesPositiveModulus) {
    const TheoremReport r = uniform_monotonicity_probe(config(OrliczFunction::power(2), PlanarNorm::l1()));
    EXPECT_EQ(r.status, ReportStatus::Passed);
    for (const auto &[k, v] : r.metrics)
        if (k.rfind("empirical_modulus", 0) == 0 || k.rfind("delta_hat", 0) == 0)
            EXPECT_GT(v, 0) << k;
}

TEST(UniformMonotonicity, ExpMinusCounterexample) {
    const TheoremReport r = uniform_monotonicity_probe(
        config(OrliczFunction::exp_minus(), PlanarNorm::lq(2), MeasureSpace::make({1, 0.5L})));
    EXPECT_EQ(r.status, ReportStatus::Passed);
    EXPECT_FALSE(r.witnesses.empty());
    const double k = metric(r, "k");
    for (const auto &w : r.witnesses) {
        EXPECT_GE(w.rhs, 2 / (3 * k) - 1e-9);
        EXPECT_LE(w.lhs, std::ldexp(1.0, -static_cast<int>(w.trial)) + 1e-9);
    }
}

TEST(ModularNormEquivalence, Examples) {
    const TheoremReport p2 =
        modular_norm_equivalence_probe(config(OrliczFunction::power(2), PlanarNorm::linf()));
    EXPECT_EQ(p2.status, ReportStatus::Passed);
    EXPECT_NEAR(metric(p2, "last_norm"), std::ldexp(1.0, -20), 1e-12);

    const TheoremReport flat = modular_norm_equivalence_probe(
        config(OrliczFunction::flat_then_power(1, 2), PlanarNorm::lq(2)));
    EXPECT_EQ(flat.status, ReportStatus::Passed);
    EXPECT_NEAR(metric(flat, "norm"), 1, 1e-12);

    const TheoremReport e = modular_norm_equivalence_probe(
        config(OrliczFunction::exp_minus(), PlanarNorm::l1(), MeasureSpace::make({1, 0.5L})));
    EXPECT_EQ(e.status, ReportStatus::Passed);
    EXPECT_EQ(e.witnesses.size(), 20u);
    EXPECT_GE(metric(e, "min_norm"), 0.9);
}

TEST(OrderContinuity, Examples) {
    const TheoremReport p2 = order_continuity_probe(
        config(OrliczFunction::power(2), PlanarNorm::lq(2), MeasureSpace::make({1, 0.5L})));
    EXPECT_EQ(p2.status, ReportStatus::Passed);
    EXPECT_LE(metric(p2, "last_tail_norm"), 1e-3);
    const TheoremReport e = order_continuity_probe(
        config(OrliczFunction::exp_minus(), PlanarNorm::lq(2), MeasureSpace::make({1, 0.5L})));
    EXPECT_EQ(e.status, ReportStatus::Passed);
    EXPECT_FALSE(e.witnesses.empty());
}

TEST(SteepPiece, BudgetAndRatioLevel) {
    const auto phi = OrliczFunction::exp_minus();
    const SteepPiece s = steep_piece(phi, PlanarNorm::l1(), 1e-3, 0, 4000, 0.9);
    EXPECT_GE(s.norm, 0.9);
    EXPECT_NEAR(static_cast<double>(s.weight * phi.wide(s.level)), 1e-3, 1e-9);
    const double v = ratio_level(phi, 1.5, 1e6L);
    EXPECT_GE(phi(1.5 * v), 1e6 * phi(v));
    EXPECT_THROW(ratio_level(OrliczFunction::power(2), 1.5, 1e6L), PreconditionError);
}

TEST(RunSuites, AllStatusesAndDeterminism) {
    VerifierConfig c = config(OrliczFunction::power(2), PlanarNorm::l1(), MeasureSpace::counting(4), 50);
    const auto a = run_suites({TheoremId::T2, TheoremId::T1, TheoremId::T2}, c);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].id, TheoremId::T1);
    EXPECT_EQ(a[1].id, TheoremId::T2);
    const auto all = run_suites({kAllTheorems.begin(), kAllTheorems.end()}, c);
    for (const auto &r : all)
        EXPECT_TRUE(r.passed()) << to_string(r.id);
    const auto again = run_suites({kAllTheorems.begin(), kAllTheorems.end()}, c);
    for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i].status, again[i].status);
        EXPECT_EQ(all[i].metrics, again[i].metrics);
        EXPECT_EQ(all[i].trials, again[i].trials);
    }
}

TEST(RunSuites, ExpectedCounterexamplesPass) {
    for (const auto &p : {PlanarNorm::l1(), PlanarNorm::lq(2), PlanarNorm::linf()}) {
        for (const auto &phi : {OrliczFunction::exp_minus(), OrliczFunction::flat_then_power(1, 2),
                                OrliczFunction::piecewise_linear({{0, 0}, {1, 0}, {2, 1}})}) {
            VerifierConfig c = config(phi, p, MeasureSpace::make({1, 0.5L, 0.25L, kInf}), 40);
            for (const auto &r : run_suites({kAllTheorems.begin(), kAllTheorems.end()}, c))
                EXPECT_TRUE(r.passed()) << to_string(r.id) << " " << phi.name() << " " << p.name();
        }
    }
}

TEST(LemmaSuites, L1AndL2) {
    EXPECT_EQ(run_suite(TheoremId::L1, config(OrliczFunction::power(2), PlanarNorm::lq(2))).status,
              ReportStatus::Passed);
    const auto abs = OrliczFunction::piecewise_linear({{0, 0}, {1, 1}});
    EXPECT_EQ(run_suite(TheoremId::L1, config(abs, PlanarNorm::l1())).status,
              ReportStatus::HypothesisNotMet);
    EXPECT_EQ(run_suite(TheoremId::L2, config(OrliczFunction::flat_then_power(1, 2), PlanarNorm::l1())).status,
              ReportStatus::Passed);
    EXPECT_EQ(run_suite(TheoremId::L2, config(OrliczFunction::power(2), PlanarNorm::l1())).status,
              ReportStatus::HypothesisNotMet);
}
