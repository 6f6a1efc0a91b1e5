#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "crk/errors.hpp"
#include "crk/sampling.hpp"

using namespace crk;

TEST(Deviation, MixedAbsoluteRelative) {
  EXPECT_EQ(deviation(Vec{1, 2}, Vec{1, 2}), 0.0);
  EXPECT_DOUBLE_EQ(deviation(Vec{0.5}, Vec{0.25}), 0.25);
  EXPECT_DOUBLE_EQ(deviation(Vec{1000}, Vec{1001}), 1.0 / 1001);
  EXPECT_TRUE(std::isinf(deviation(Vec{1}, Vec{1, 2})));
  EXPECT_EQ(deviation(Vec{}, Vec{}), 0.0);
}

TEST(TrialSeed, DependsOnEveryInput) {
  std::set<std::uint64_t> seeds;
  for (std::size_t t = 0; t < 100; ++t) seeds.insert(trial_seed(1, "law", t));
  seeds.insert(trial_seed(2, "law", 0));
  seeds.insert(trial_seed(1, "other", 0));
  EXPECT_EQ(seeds.size(), 102u);
  EXPECT_EQ(trial_seed(9, "x", 3), trial_seed(9, "x", 3));
}

TEST(Sampler, RangesAndDeterminism) {
  Sampler a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform(-2, 3);
    EXPECT_EQ(u, b.uniform(-2, 3));
    EXPECT_GE(u, -2);
    EXPECT_LT(u, 3);
    const int p = a.phase();
    b.phase();
    EXPECT_GE(p, 1);
    EXPECT_LE(p, 4);
    EXPECT_LT(a.index(7), 7u);
    b.index(7);
  }
  EXPECT_EQ(a.vec(5, 0, 1), b.vec(5, 0, 1));
}

TEST(SampleConfig, Validate) {
  SampleConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = SampleConfig{};
  cfg.tolerance = -1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = SampleConfig{};
  cfg.range_lo = 1;
  cfg.range_hi = 1;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(DeviationTracker, KeepsWorstSample) {
  DeviationTracker t("law");
  int describe_calls = 0;
  t.record(0.1, [&] { ++describe_calls; return std::string("a"); });
  t.record(0.05, [&] { ++describe_calls; return std::string("b"); });
  t.record(0.2, [&] { ++describe_calls; return std::string("c"); });
  t.count_trial();
  EXPECT_EQ(describe_calls, 2);
  const LawReport r = t.finish(0.15);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.worst_sample, "c");
  EXPECT_EQ(r.trials_run, 1u);
  EXPECT_EQ(r.max_deviation, 0.2);
  EXPECT_TRUE(t.finish(0.2).pass);
}

TEST(DeviationTracker, StructuralFailureIsInfinite) {
  DeviationTracker t("law");
  t.fail("broken");
  const LawReport r = t.finish(1e300);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(std::isinf(r.max_deviation));
}

TEST(Reports, MergeAndFormat) {
  LawReport a{"a", 3, 1e-12, 1e-10, "", true};
  LawReport b{"b", 4, 5e-10, 1e-10, "trial=2", false};
  const LawReport m = merge_reports("m", {a, b}, 1e-10);
  EXPECT_EQ(m.trials_run, 7u);
  EXPECT_EQ(m.max_deviation, 5e-10);
  EXPECT_FALSE(m.pass);
  EXPECT_NE(m.worst_sample.find("b: trial=2"), std::string::npos);
  EXPECT_EQ(format_report(a), "a  3  9.9999999999999998e-13  PASS");
  EXPECT_EQ(format_report(b), "b  4  5.0000000000000003e-10  FAIL  # replay: trial=2");
}
