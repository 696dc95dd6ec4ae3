#include "selfspec/oracle.h"

#include "selfspec/errors.h"
#include "selfspec/linalg.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
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

DenseMatrix random_spd(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix b(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b(i, j) = u(rng);
    DenseMatrix f(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += b(i, k) * b(j, k);
            f(i, j) = s + (i == j ? 0.5 * dim : 0.0);
        }
    return f;
}

} // namespace

TEST(Kernel, SecondOrderClosedForm) {
    GreenKernel g(1);
    for (int i = 1; i < 16; ++i) {
        for (int j = 1; j < 16; ++j) {
            double x = i / 16.0, s = j / 16.0;
            double expected = std::min(x, s) * (1.0 - std::max(x, s));
            EXPECT_NEAR(g.value(x, s), expected, 1e-14) << x << "," << s;
        }
    }
}

TEST(Kernel, FourthOrderDiagonal) {
    GreenKernel g(2);
    EXPECT_NEAR(g.value(0.5, 0.5), 1.0 / 192, 1e-16);
    for (int i = 1; i < 12; ++i) {
        double s = i / 12.0;
        double expected = s * s * s * (1 - s) * (1 - s) * (1 - s) / 3.0;
        EXPECT_NEAR(g.value(s, s), expected, 1e-13 * expected + 1e-16) << s;
    }
}

TEST(Kernel, SymmetricInArguments) {
    for (int n = 1; n <= 3; ++n) {
        GreenKernel g(n);
        double scale = g.value(0.5, 0.5);
        for (int i = 1; i < 10; ++i) {
            for (int j = i + 1; j < 10; ++j) {
                double x = i / 10.0, s = j / 10.0;
                EXPECT_NEAR(g.value(x, s), g.value(s, x), 1e-11 * scale) << n;
            }
        }
    }
}

TEST(Kernel, VanishesAtEndpointsToHighOrder) {
    GreenKernel g(2);
    GreenKernel::Coefficients c = g.coefficients(0.5);
    // clamped: value and slope both tiny near the ends
    EXPECT_NEAR(g.value(0.0, c), 0.0, 1e-15);
    EXPECT_NEAR(g.value(1.0, c), 0.0, 1e-15);
    EXPECT_LT(std::abs(g.value(1e-4, c)), 1e-7);
    EXPECT_LT(std::abs(g.value(1.0 - 1e-4, c)), 1e-7);
}

TEST(Kernel, RejectsSourcesAtTheBoundary) {
    GreenKernel g(2);
    EXPECT_EQ(thrown_kind([&] { g.coefficients(1e-13); }), ErrorKind::IllConditioned);
    EXPECT_EQ(thrown_kind([&] { g.coefficients(1.0 - 1e-13); }), ErrorKind::IllConditioned);
}

TEST(Collocation, TwoAtomSpectrum) {
    std::vector<double> eigs = green_spectrum(1, {{1.0 / 3, 1.0}, {2.0 / 3, 1.0}});
    ASSERT_EQ(eigs.size(), 2u);
    EXPECT_NEAR(eigs[0], 3.0, 3e-10);
    EXPECT_NEAR(eigs[1], 9.0, 9e-10);
}

TEST(Collocation, AtomBudgetIsEnforced) {
    std::vector<Atom> atoms;
    for (int i = 1; i <= 201; ++i) atoms.push_back({i / 202.0, 1.0});
    EXPECT_EQ(thrown_kind([&] { green_spectrum(1, atoms); }), ErrorKind::DimensionTooLarge);
}

TEST(Collocation, SignedSplitOrdersOutward) {
    SignedSpectrum s = split_signed({-9.0, -1.0, 2.0, 5.0});
    ASSERT_EQ(s.pos.size(), 2u);
    ASSERT_EQ(s.neg.size(), 2u);
    EXPECT_DOUBLE_EQ(s.pos[0], 2.0);
    EXPECT_DOUBLE_EQ(s.pos[1], 5.0);
    EXPECT_DOUBLE_EQ(s.neg[0], -1.0);
    EXPECT_DOUBLE_EQ(s.neg[1], -9.0);
}

TEST(Perturbation, IdentityPerturbationIsNeutral) {
    std::mt19937_64 rng(7);
    PerturbationInstance inst;
    inst.f = random_spd(rng, 4);
    inst.d = DenseMatrix(4);
    ProductCheck pc = perturbation_product_check(inst);
    EXPECT_TRUE(pc.ok);
    EXPECT_EQ(pc.compared, 4);
    EXPECT_NEAR(pc.product, 1.0, 1e-9);
    EXPECT_NEAR(pc.bound, 1.0, 1e-12);
    for (double r : pc.ratios) EXPECT_NEAR(r, 1.0, 1e-9);

    PartialsCheck pk = perturbation_partials(inst, 4);
    EXPECT_TRUE(pk.ok);
    ASSERT_EQ(pk.partials.size(), 4u);
    for (double v : pk.partials) EXPECT_NEAR(v, 1.0, 1e-9);
}

TEST(Perturbation, RankOneShiftKeepsTheBound) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        int dim = 5;
        PerturbationInstance inst;
        inst.f = random_spd(rng, dim);
        std::vector<double> v(static_cast<size_t>(dim));
        for (double& x : v) x = u(rng);
        inst.d = DenseMatrix(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                inst.d(i, j) = v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
        ProductCheck pc = perturbation_product_check(inst);
        EXPECT_TRUE(pc.ok) << "trial " << trial << " defect " << pc.worst_defect;
        EXPECT_LE(pc.product, pc.bound * (1.0 + 1e-9));
        for (double r : pc.ratios) EXPECT_GE(r, 1.0 - 1e-9);

        PartialsCheck pk = perturbation_partials(inst, dim);
        EXPECT_TRUE(pk.ok) << "trial " << trial;
        for (size_t i = 1; i < pk.partials.size(); ++i)
            EXPECT_GE(pk.partials[i], pk.partials[i - 1] * (1.0 - 1e-12));
    }
}

TEST(Perturbation, GuardsDimensionAndSpectrumShortfall) {
    PerturbationInstance big;
    big.f = DenseMatrix::identity(51);
    big.d = DenseMatrix(51);
    EXPECT_EQ(thrown_kind([&] { perturbation_product_check(big); }),
              ErrorKind::DimensionTooLarge);

    PerturbationInstance thin;
    thin.f = DenseMatrix(3);
    thin.f(0, 0) = 1.0;
    thin.f(1, 1) = -1.0;
    thin.d = DenseMatrix(3);
    EXPECT_EQ(thrown_kind([&] { perturbation_partials(thin, 2); }),
              ErrorKind::InsufficientPositiveSpectrum);
}
