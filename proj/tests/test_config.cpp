#include "selfspec/config.h"

#include "selfspec/errors.h"
#include "selfspec/selfsim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace selfspec;

namespace {

const std::string kData = SELFSPEC_TEST_DATA;

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

} // namespace

TEST(Fractions, ParsesRatiosAndDecimals) {
    EXPECT_NEAR(parse_fraction("1/3"), 1.0 / 3, 1e-17);
    EXPECT_NEAR(parse_fraction("-1/2"), -0.5, 1e-17);
    EXPECT_NEAR(parse_fraction("2/3"), 2.0 / 3, 1e-17);
    EXPECT_DOUBLE_EQ(parse_fraction("0.25"), 0.25);
    EXPECT_DOUBLE_EQ(parse_fraction("3"), 3.0);
    EXPECT_DOUBLE_EQ(parse_fraction("-1e-2"), -0.01);
}

TEST(Fractions, RejectsGarbage) {
    EXPECT_EQ(thrown_kind([] { parse_fraction("1/0"); }), ErrorKind::ConfigError);
    EXPECT_EQ(thrown_kind([] { parse_fraction("abc"); }), ErrorKind::ConfigError);
    EXPECT_EQ(thrown_kind([] { parse_fraction(""); }), ErrorKind::ConfigError);
    EXPECT_EQ(thrown_kind([] { parse_fraction("0.2x"); }), ErrorKind::ConfigError);
}

TEST(ConfigFile, LoadsJobDescription) {
    JobConfig cfg = load_config(kData + "/table1.json");
    EXPECT_EQ(cfg.params.n, 2);
    ASSERT_EQ(cfg.params.a.size(), 3u);
    EXPECT_NEAR(cfg.params.a[0], 1.0 / 3, 1e-16);
    EXPECT_NEAR(cfg.params.beta[1], 2.0 / 3, 1e-16);
    EXPECT_DOUBLE_EQ(cfg.params.d[2], 0.5);
    EXPECT_EQ(cfg.depth, -1);
    EXPECT_EQ(cfg.pos_count, 8);
    EXPECT_EQ(cfg.neg_count, 0);
    EXPECT_EQ(cfg.format, "csv");
}

TEST(ConfigFile, ValidationHappensDownstream) {
    JobConfig cfg = load_config(kData + "/bad_sum.json");
    EXPECT_EQ(thrown_kind([&] { validate_params(cfg.params); }), ErrorKind::SumNotOne);
}

TEST(ConfigFile, RejectsMissingOrBrokenFiles) {
    EXPECT_EQ(thrown_kind([&] { load_config(kData + "/no_such_file.json"); }),
              ErrorKind::ConfigError);
    EXPECT_EQ(thrown_kind([&] { load_config(kData + "/malformed.json"); }),
              ErrorKind::ConfigError);
}

TEST(Presets, ReferenceRowCounts) {
    TablePreset t1 = preset_table(1);
    EXPECT_EQ(t1.pos_count, 8);
    EXPECT_EQ(t1.neg_count, 0);
    ASSERT_EQ(t1.rows.size(), 8u);
    EXPECT_EQ(t1.rows[0].index, 1);
    EXPECT_NEAR(t1.rows[0].norm, 286.10, 1e-9);
    EXPECT_EQ(t1.rows[6].l, 1);
    EXPECT_EQ(t1.rows[6].k, 3);

    TablePreset t2 = preset_table(2);
    EXPECT_EQ(t2.pos_count, 0);
    EXPECT_EQ(t2.neg_count, 4);
    ASSERT_EQ(t2.rows.size(), 4u);
    EXPECT_EQ(t2.rows[0].index, -1);
    EXPECT_NEAR(t2.rows[3].norm, 157.20, 1e-9);

    TablePreset t3 = preset_table(3);
    EXPECT_EQ(t3.pos_count, 6);
    EXPECT_EQ(t3.neg_count, 7);
    ASSERT_EQ(t3.rows.size(), 12u);
    EXPECT_EQ(t3.rows.back().index, -7);

    EXPECT_EQ(thrown_kind([] { preset_table(4); }), ErrorKind::ConfigError);
}
