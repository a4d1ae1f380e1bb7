#include <gtest/gtest.h>

#include "oracles.hpp"
#include "selias/errors.hpp"
#include "selias/verify.hpp"

using namespace selias;
using namespace selias::verify;

TEST(Equivalence, ParallelMatchesSerial) {
  for (int n = 0; n <= 12; ++n) {
    const auto par = exhaustive_equivalence(n);
    EXPECT_EQ(par, exhaustive_equivalence_ref(n)) << n;
    EXPECT_TRUE(par.ok()) << n;
  }
}

TEST(Equivalence, NodeCountsAreBinomials) {
  const auto rep = exhaustive_equivalence(10);
  std::map<int, std::uint64_t> per_t;
  for (const auto& node : rep.nodes) {
    EXPECT_EQ(node.strings, std::uint64_t{1} << node.l);
    per_t[node.t] += node.strings;
  }
  for (int t = 0; t <= 10; ++t) EXPECT_EQ(oracle::binomial(10, t), per_t[t]);
  EXPECT_EQ(rep.steps_checked, 10U << 10);
}

TEST(Equivalence, PopulationRecursion) {
  auto prev = exhaustive_equivalence(0);
  for (int n = 1; n <= 12; ++n) {
    auto cur = exhaustive_equivalence(n);
    EXPECT_TRUE(check_population_recursion(prev, cur).empty()) << n;
    prev = std::move(cur);
  }
  EXPECT_THROW((void)exhaustive_equivalence(kEquivalenceCap + 1), ResourceLimitError);
}

TEST(Balance, ParallelMatchesSerial) {
  for (int n = 0; n <= 10; ++n) {
    const auto par = balanced_paths(n);
    EXPECT_EQ(par, balanced_paths_ref(n)) << n;
    EXPECT_TRUE(par.violations.empty()) << n;
  }
  EXPECT_THROW((void)balanced_paths(kBalanceCap + 1), ResourceLimitError);
}

TEST(Yield, EnumeratedMatchesTypeSum) {
  const auto table = BinomialTable::build(16);
  for (const auto& model : {SourceModel::ratio(1, 10), SourceModel::ratio(1, 2), SourceModel::ratio(7, 9)}) {
    for (int n = 0; n <= 16; ++n) EXPECT_EQ(enumerated_yield(n, model), expected_yield(table, n, model)) << n;
  }
}

TEST(Yield, SweepHasNoViolations) {
  const auto rep = yield_bound_sweep(24, {SourceModel::ratio(3, 10), SourceModel::ratio(1, 2)});
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.rows.size(), 2U * 25U);
  for (const auto& row : rep.rows) EXPECT_GT(row.margin(), 0.0);
}

TEST(Stats, ParallelMatchesSerialAndIsSeeded) {
  const auto par = statistical_battery(0.3, 200000, 11);
  EXPECT_EQ(par, statistical_battery_ref(0.3, 200000, 11));
  EXPECT_EQ(par, statistical_battery(0.3, 200000, 11));
  EXPECT_NE(par.output_bits, statistical_battery(0.3, 200000, 12).output_bits);
  EXPECT_EQ(par.samples, 200000);
}

TEST(Stats, SegmentInputIsBiasedAsRequested) {
  std::int64_t ones = 0;
  std::int64_t total = 0;
  for (int seg = 0; seg < 100; ++seg) {
    const BitVec s = segment_input(0.3, 5, seg, 1024);
    for (Bit b : s) ones += b;
    total += static_cast<std::int64_t>(s.size());
  }
  const double p1 = static_cast<double>(ones) / static_cast<double>(total);
  EXPECT_NEAR(p1, 0.7, 4 * std::sqrt(0.21 / static_cast<double>(total)));
}
