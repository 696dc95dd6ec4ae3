#include "selfspec/asympt.h"

#include "selfspec/errors.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace selfspec;

namespace {

template <typename Fn>
ErrorKind thrown_kind(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::ConfigError;
}

StructureReport report(std::vector<double> zeta, double q) {
    StructureReport s;
    s.zeta = std::move(zeta);
    for (double z : s.zeta) {
        if (z > 0) ++s.z_plus;
        else if (z < 0) ++s.z_minus;
    }
    s.nondegenerate = s.z_plus + s.z_minus == static_cast<int>(s.zeta.size());
    s.ratio_q = q;
    s.contraction_l2 = 0.1;
    return s;
}

std::vector<EigItem> geometric_series(int count, double tau, double step) {
    std::vector<EigItem> eigs;
    for (int i = 1; i <= count; ++i)
        eigs.push_back({i, tau * std::pow(step, i - 1), true});
    return eigs;
}

} // namespace

TEST(Classify, PositiveScaleUsesSignCounts) {
    RegimeDescriptor rd = classify(report({2.0 / 3, 1.0 / 3}, 1.0 / 54));
    EXPECT_TRUE(rd.supported);
    EXPECT_EQ(rd.kind, RegimeKind::Geometric);
    ASSERT_TRUE(rd.pos.has_value());
    EXPECT_EQ(rd.pos->period, 2);
    EXPECT_EQ(rd.pos->offset, 0);
    EXPECT_EQ(rd.pos->pow_per_step, 1);
    EXPECT_EQ(rd.pos->pow_offset, 0);
    EXPECT_FALSE(rd.neg.has_value());
    EXPECT_NEAR(expected_ratio(rd, *rd.pos), 54.0, 1e-10);

    RegimeDescriptor mixed = classify(report({-1.0, 1.0}, 1.0 / 54));
    ASSERT_TRUE(mixed.pos.has_value());
    ASSERT_TRUE(mixed.neg.has_value());
    EXPECT_EQ(mixed.pos->period, 1);
    EXPECT_EQ(mixed.neg->period, 1);
    EXPECT_EQ(mixed.neg->offset, 0);
}

TEST(Classify, NegativeScaleAlternates) {
    RegimeDescriptor rd = classify(report({-1.0, 1.0}, -1.0 / 54));
    EXPECT_TRUE(rd.supported);
    EXPECT_EQ(rd.kind, RegimeKind::Alternating);
    ASSERT_TRUE(rd.pos.has_value());
    EXPECT_EQ(rd.pos->period, 2);
    EXPECT_EQ(rd.pos->offset, 0);
    EXPECT_EQ(rd.pos->pow_per_step, 2);
    EXPECT_EQ(rd.pos->pow_offset, 0);
    ASSERT_TRUE(rd.neg.has_value());
    EXPECT_EQ(rd.neg->period, 2);
    EXPECT_EQ(rd.neg->offset, 1);
    EXPECT_EQ(rd.neg->pow_per_step, 2);
    EXPECT_EQ(rd.neg->pow_offset, 1);
    EXPECT_NEAR(expected_ratio(rd, *rd.pos), 2916.0, 1e-9);
    EXPECT_NEAR(expected_ratio(rd, *rd.neg), 2916.0, 1e-9);
}

TEST(Classify, VanishingJumpIsDegenerate) {
    RegimeDescriptor rd = classify(report({0.0, 0.5}, 1.0 / 54));
    EXPECT_FALSE(rd.supported);
    EXPECT_EQ(rd.kind, RegimeKind::Degenerate);
    EXPECT_FALSE(rd.pos.has_value());
    EXPECT_FALSE(rd.neg.has_value());
}

TEST(IndexLawMap, WalksResiduesAndPeriods) {
    RegimeDescriptor rd = classify(report({2.0 / 3, 1.0 / 3}, 1.0 / 54));
    IndexLaw first = apply_law(rd, 1, 286.1);
    EXPECT_TRUE(first.in_law);
    EXPECT_EQ(first.l, 1);
    EXPECT_EQ(first.k, 0);
    EXPECT_NEAR(first.normalized, 286.1, 1e-12);

    IndexLaw seventh = apply_law(rd, 7, 4.27e7);
    EXPECT_EQ(seventh.l, 1);
    EXPECT_EQ(seventh.k, 3);
    EXPECT_NEAR(seventh.normalized, 4.27e7 / std::pow(54.0, 3), 1e-6);

    IndexLaw eighth = apply_law(rd, 8, 1.99e8);
    EXPECT_EQ(eighth.l, 2);
    EXPECT_EQ(eighth.k, 3);
}

TEST(IndexLawMap, AlternatingOffsetRows) {
    RegimeDescriptor rd = classify(report({-1.0, 1.0}, -1.0 / 54));
    IndexLaw head = apply_law(rd, -1, -369.0);
    EXPECT_FALSE(head.in_law);
    EXPECT_EQ(head.l, 0);
    EXPECT_EQ(head.k, 0);
    EXPECT_NEAR(head.normalized, -369.0, 1e-12);

    IndexLaw second = apply_law(rd, -2, -1.61e4);
    EXPECT_TRUE(second.in_law);
    EXPECT_EQ(second.l, 1);
    EXPECT_EQ(second.k, 0);
    EXPECT_NEAR(second.normalized, -1.61e4 / 54.0, 1e-9);

    IndexLaw sixth = apply_law(rd, -6, -2.54e9);
    EXPECT_EQ(sixth.l, 1);
    EXPECT_EQ(sixth.k, 2);
    EXPECT_NEAR(sixth.normalized, -2.54e9 / std::pow(54.0, 5), 1e-7);

    IndexLaw pos5 = apply_law(rd, 5, 2.54e9);
    EXPECT_EQ(pos5.l, 1);
    EXPECT_EQ(pos5.k, 2);
    EXPECT_NEAR(pos5.normalized, 2.54e9 / std::pow(54.0, 4), 1e-7);
}

TEST(IndexLawMap, UnsupportedRegimePassesThrough) {
    RegimeDescriptor rd = classify(report({0.0, 0.5}, 1.0 / 54));
    IndexLaw law = apply_law(rd, 3, 123.0);
    EXPECT_FALSE(law.in_law);
    EXPECT_EQ(law.l, 0);
    EXPECT_EQ(law.k, 0);
    EXPECT_NEAR(law.normalized, 123.0, 1e-12);
}

TEST(TauEstimate, ExactGeometricSeries) {
    RegimeDescriptor rd = classify(report({1.0}, 1.0 / 54));
    ASSERT_TRUE(rd.pos.has_value());
    EXPECT_EQ(rd.pos->period, 1);
    std::vector<EigItem> eigs = geometric_series(5, 5.0, 54.0);
    SideAsymptotics sa = estimate_tau(eigs, rd, +1);
    EXPECT_EQ(sa.periods, 5);
    ASSERT_EQ(sa.tau.size(), 1u);
    EXPECT_NEAR(sa.tau[0], 5.0, 1e-12);
    EXPECT_TRUE(sa.converged);
    for (double r : sa.residuals[0]) EXPECT_NEAR(r, 0.0, 1e-13);

    GeomCheck gc = geometric_check(eigs, rd, +1);
    EXPECT_NEAR(gc.expected, 54.0, 1e-12);
    EXPECT_NEAR(gc.last_ratio[0], 54.0, 1e-10);
    EXPECT_NEAR(gc.worst_rel_err, 0.0, 1e-12);
}

TEST(TauEstimate, SeriesStopsAtFirstGap) {
    RegimeDescriptor rd = classify(report({1.0}, 1.0 / 54));
    std::vector<EigItem> eigs = geometric_series(3, 7.0, 54.0);
    eigs.push_back({5, 7.0 * std::pow(54.0, 4), true});
    SideAsymptotics sa = estimate_tau(eigs, rd, +1);
    EXPECT_EQ(sa.periods, 3);
    EXPECT_NEAR(sa.tau[0], 7.0, 1e-12);
}

TEST(TauEstimate, RefusesThinData) {
    RegimeDescriptor rd = classify(report({1.0}, 1.0 / 54));
    std::vector<EigItem> eigs = geometric_series(2, 5.0, 54.0);
    EXPECT_EQ(thrown_kind([&] { estimate_tau(eigs, rd, +1); }), ErrorKind::InsufficientData);
    EXPECT_EQ(thrown_kind([&] { estimate_tau(eigs, rd, -1); }), ErrorKind::DegenerateRegime);

    std::vector<EigItem> one = geometric_series(1, 5.0, 54.0);
    EXPECT_EQ(thrown_kind([&] { geometric_check(one, rd, +1); }), ErrorKind::InsufficientData);
}
