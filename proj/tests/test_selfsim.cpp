#include "selfspec/selfsim.h"

#include "selfspec/errors.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace selfspec;

namespace {

RawParams thirds_up() {
    RawParams r;
    r.n = 2;
    r.a = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    r.beta = {0.0, 2.0 / 3, 1.0};
    r.d = {0.0, 0.0, 0.5};
    return r;
}

RawParams thirds_dip() {
    RawParams r = thirds_up();
    r.beta = {0.0, -1.0, 0.0};
    return r;
}

RawParams thirds_dip_neg() {
    RawParams r = thirds_dip();
    r.d = {0.0, 0.0, -0.5};
    return r;
}

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

// Step-function value just right of x.
double step_at(const RefinedWeight& w, double x) {
    auto it = std::upper_bound(w.breakpoints.begin(), w.breakpoints.end(), x);
    size_t i = static_cast<size_t>(it - w.breakpoints.begin());
    if (i == 0) i = 1;
    if (i >= w.breakpoints.size()) i = w.breakpoints.size() - 1;
    return w.values[i - 1];
}

double l2_diff(const RefinedWeight& a, const RefinedWeight& b) {
    std::vector<double> cuts = a.breakpoints;
    cuts.insert(cuts.end(), b.breakpoints.begin(), b.breakpoints.end());
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double len = cuts[i + 1] - cuts[i];
        if (len <= 0.0) continue;
        double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        double d = step_at(a, mid) - step_at(b, mid);
        s += d * d * len;
    }
    return std::sqrt(s);
}

// Independent pointwise evaluation straight from the fixed-point recursion.
double eval_level(const SimilarityParams& p, int j, double x) {
    if (j == 0) return 0.0;
    int k = 1;
    while (k < p.N && x >= p.alpha[k]) ++k;
    double val = p.beta[k - 1];
    if (p.d[k - 1] != 0.0)
        val += p.d[k - 1] * eval_level(p, j - 1, (x - p.alpha[k - 1]) / p.a[k - 1]);
    return val;
}

} // namespace

TEST(Validate, AcceptsReferenceFamilies) {
    SimilarityParams p = validate_params(thirds_up());
    EXPECT_EQ(p.N, 3);
    EXPECT_EQ(p.m, 3);
    ASSERT_EQ(p.alpha.size(), 4u);
    EXPECT_DOUBLE_EQ(p.alpha[0], 0.0);
    EXPECT_NEAR(p.alpha[1], 1.0 / 3, 1e-15);
    EXPECT_NEAR(p.alpha[2], 2.0 / 3, 1e-15);
    EXPECT_DOUBLE_EQ(p.alpha[3], 1.0);
    EXPECT_NO_THROW(validate_params(thirds_dip()));
    EXPECT_NO_THROW(validate_params(thirds_dip_neg()));
}

TEST(Validate, RejectsBadShapes) {
    RawParams r = thirds_up();
    r.beta.pop_back();
    EXPECT_EQ(thrown_kind([&] { validate_params(r); }), ErrorKind::ShapeMismatch);

    RawParams single;
    single.a = {1.0};
    single.beta = {1.0};
    single.d = {0.5};
    EXPECT_EQ(thrown_kind([&] { validate_params(single); }), ErrorKind::ShapeMismatch);
}

TEST(Validate, RejectsBadLengths) {
    RawParams r = thirds_up();
    r.a = {0.5, 0.6, -0.1};
    EXPECT_EQ(thrown_kind([&] { validate_params(r); }), ErrorKind::NonPositiveLength);
    r.a = {0.5, 0.4, 0.2};
    EXPECT_EQ(thrown_kind([&] { validate_params(r); }), ErrorKind::SumNotOne);
}

TEST(Validate, RejectsWrongScaleProfile) {
    RawParams r = thirds_up();
    r.d = {0.1, 0.0, 0.5};
    EXPECT_EQ(thrown_kind([&] { validate_params(r); }), ErrorKind::NotZeroOrder);
    r.d = {0.0, 0.0, 0.0};
    EXPECT_EQ(thrown_kind([&] { validate_params(r); }), ErrorKind::NotZeroOrder);
    r = thirds_up();
    r.beta = {0.0, 0.0, 0.0};
    EXPECT_EQ(thrown_kind([&] { validate_params(r); }), ErrorKind::NotZeroOrder);
}

TEST(Validate, RejectsExpansiveScale) {
    RawParams r;
    r.n = 1;
    r.a = {0.5, 0.5};
    r.beta = {0.0, 1.0};
    r.d = {0.0, 2.0};
    EXPECT_EQ(thrown_kind([&] { validate_params(r); }), ErrorKind::NotContractive);
}

TEST(Structure, ReferenceJumpProfiles) {
    StructureReport s1 = compute_structure(validate_params(thirds_up()));
    ASSERT_EQ(s1.zeta.size(), 2u);
    EXPECT_NEAR(s1.zeta[0], 2.0 / 3, 1e-15);
    EXPECT_NEAR(s1.zeta[1], 1.0 / 3, 1e-15);
    EXPECT_EQ(s1.z_plus, 2);
    EXPECT_EQ(s1.z_minus, 0);
    EXPECT_TRUE(s1.nondegenerate);
    EXPECT_NEAR(s1.ratio_q, 1.0 / 54, 1e-17);
    EXPECT_NEAR(s1.contraction_l2, 1.0 / 12, 1e-16);

    StructureReport s2 = compute_structure(validate_params(thirds_dip()));
    EXPECT_NEAR(s2.zeta[0], -1.0, 1e-15);
    EXPECT_NEAR(s2.zeta[1], 1.0, 1e-15);
    EXPECT_EQ(s2.z_plus, 1);
    EXPECT_EQ(s2.z_minus, 1);
    EXPECT_TRUE(s2.nondegenerate);

    StructureReport s3 = compute_structure(validate_params(thirds_dip_neg()));
    EXPECT_NEAR(s3.zeta[0], -1.0, 1e-15);
    EXPECT_NEAR(s3.zeta[1], 1.0, 1e-15);
    EXPECT_NEAR(s3.ratio_q, -1.0 / 54, 1e-17);
}

TEST(Structure, FlatStretchIsDegenerate) {
    RawParams r = thirds_up();
    r.beta = {1.0, 1.0, 1.0};
    StructureReport s = compute_structure(validate_params(r));
    EXPECT_NEAR(s.zeta[0], 0.0, 1e-15);
    EXPECT_NEAR(s.zeta[1], 0.5, 1e-15);
    EXPECT_FALSE(s.nondegenerate);
    EXPECT_EQ(s.z_plus, 1);
    EXPECT_EQ(s.z_minus, 0);
}

TEST(Refine, FirstLevels) {
    SimilarityParams p = validate_params(thirds_up());

    RefinedWeight w0 = refine(p, 0);
    ASSERT_EQ(w0.values.size(), 1u);
    EXPECT_DOUBLE_EQ(w0.values[0], 0.0);

    RefinedWeight w1 = refine(p, 1);
    ASSERT_EQ(w1.values.size(), 3u);
    EXPECT_DOUBLE_EQ(w1.values[0], 0.0);
    EXPECT_NEAR(w1.values[1], 2.0 / 3, 1e-15);
    EXPECT_DOUBLE_EQ(w1.values[2], 1.0);

    RefinedWeight w2 = refine(p, 2);
    ASSERT_EQ(w2.values.size(), 5u);
    EXPECT_NEAR(w2.values[3], 4.0 / 3, 1e-15);
    EXPECT_NEAR(w2.values[4], 1.5, 1e-15);
    ASSERT_EQ(w2.breakpoints.size(), 6u);
    EXPECT_NEAR(w2.breakpoints[3], 7.0 / 9, 1e-15);
    EXPECT_NEAR(w2.breakpoints[4], 8.0 / 9, 1e-15);
}

TEST(Refine, DepthBounds) {
    SimilarityParams p = validate_params(thirds_up());
    EXPECT_EQ(thrown_kind([&] { refine(p, -1); }), ErrorKind::DepthOverflow);
    EXPECT_EQ(thrown_kind([&] { refine(p, 65); }), ErrorKind::DepthOverflow);
}

TEST(Refine, MatchesPointwiseRecursion) {
    for (const RawParams& raw : {thirds_up(), thirds_dip(), thirds_dip_neg()}) {
        SimilarityParams p = validate_params(raw);
        for (int j = 0; j <= 4; ++j) {
            RefinedWeight w = refine(p, j);
            for (int i = 0; i <= 37; ++i) {
                double x = 0.05 + 0.9 * i / 37.0;
                EXPECT_NEAR(step_at(w, x), eval_level(p, j, x), 1e-13)
                    << "depth " << j << " at x=" << x;
            }
        }
    }
}

TEST(Atoms, LevelTwoReference) {
    SimilarityParams p = validate_params(thirds_up());
    std::vector<Atom> atoms = extract_atoms(refine(p, 2));
    ASSERT_EQ(atoms.size(), 4u);
    EXPECT_NEAR(atoms[0].position, 1.0 / 3, 1e-15);
    EXPECT_NEAR(atoms[0].weight, 2.0 / 3, 1e-15);
    EXPECT_NEAR(atoms[1].position, 2.0 / 3, 1e-15);
    EXPECT_NEAR(atoms[1].weight, 1.0 / 3, 1e-15);
    EXPECT_NEAR(atoms[2].position, 7.0 / 9, 1e-15);
    EXPECT_NEAR(atoms[2].weight, 1.0 / 3, 1e-15);
    EXPECT_NEAR(atoms[3].position, 8.0 / 9, 1e-15);
    EXPECT_NEAR(atoms[3].weight, 1.0 / 6, 1e-15);
}

TEST(Atoms, CountGrowsOnePeriodPerLevel) {
    for (const RawParams& raw : {thirds_up(), thirds_dip(), thirds_dip_neg()}) {
        SimilarityParams p = validate_params(raw);
        for (int j = 1; j <= 6; ++j) {
            std::vector<Atom> atoms = extract_atoms(refine(p, j));
            EXPECT_EQ(atoms.size(), static_cast<size_t>(2 * j));
            for (const Atom& a : atoms) {
                EXPECT_GT(a.position, 0.0);
                EXPECT_LT(a.position, 1.0);
                EXPECT_NE(a.weight, 0.0);
            }
            EXPECT_TRUE(std::is_sorted(atoms.begin(), atoms.end(),
                                       [](const Atom& x, const Atom& y) {
                                           return x.position < y.position;
                                       }));
        }
    }
}

TEST(Atoms, FlatCellsMergeAway) {
    RawParams r = thirds_up();
    r.beta = {1.0, 1.0, 1.0};
    SimilarityParams p = validate_params(r);
    EXPECT_TRUE(extract_atoms(refine(p, 1)).empty());
    std::vector<Atom> atoms = extract_atoms(refine(p, 2));
    ASSERT_EQ(atoms.size(), 1u);
    EXPECT_NEAR(atoms[0].position, 2.0 / 3, 1e-15);
    EXPECT_NEAR(atoms[0].weight, 0.5, 1e-15);
}

TEST(Refine, SuccessiveDifferencesContractExactly) {
    for (const RawParams& raw : {thirds_up(), thirds_dip_neg()}) {
        SimilarityParams p = validate_params(raw);
        double am = p.a[p.m - 1], dm = p.d[p.m - 1];
        double expected = std::sqrt(am * dm * dm);
        std::vector<RefinedWeight> levels;
        for (int j = 0; j <= 6; ++j) levels.push_back(refine(p, j));
        double prev = l2_diff(levels[1], levels[0]);
        for (int j = 1; j <= 5; ++j) {
            double next = l2_diff(levels[j + 1], levels[j]);
            EXPECT_NEAR(next / prev, expected, 1e-10 * expected) << "level " << j;
            prev = next;
        }
    }
}
