#include <map>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "selias/errors.hpp"
#include "selias/young.hpp"

using namespace selias;

TEST(YoungDim, KnownValues) {
  EXPECT_EQ(young_dim(2, 1), 1);
  EXPECT_EQ(young_dim(3, 0), 1);
  EXPECT_EQ(young_dim(3, 1), 2);
  EXPECT_EQ(young_dim(6, 2), 9);
  EXPECT_EQ(young_dim(6, 3), 5);
  EXPECT_EQ(young_dim(3, 2), 0);
}

TEST(YoungDim, ThreeWayAgreementWithBruteForce) {
  const auto table = YoungTable::build(20);
  for (int n = 0; n <= 20; ++n) {
    for (int t = 0; 2 * t <= n; ++t) {
      const BigInt brute = oracle::ballot_brute(n, t);
      EXPECT_EQ(young_dim(n, t), brute) << n << "," << t;
      EXPECT_EQ(hook_dim_oracle(n, t), brute);
      EXPECT_EQ(path_count(n, t), brute);
      EXPECT_EQ(table.dim(n, t), brute);
    }
    EXPECT_EQ(table.dim(n, n / 2 + 1), 0);
  }
}

TEST(YoungDim, SumOfSquaresIsPermutationCount) {
  // Two-row irreps of S_n weighted by their SU(2) dimension span all n qubits.
  for (int n = 0; n <= 20; ++n) {
    BigInt total = 0;
    for (int t = 0; 2 * t <= n; ++t) total += young_dim(n, t) * (n - 2 * t + 1);
    EXPECT_EQ(total, BigInt(1) << n);
  }
}

TEST(YoungDim, InvalidNodes) {
  EXPECT_THROW((void)hook_dim_oracle(4, 3), DomainError);
  EXPECT_THROW((void)path_count(-1, 0), DomainError);
}

TEST(QStep, CorrectedTrace) {
  const auto table = YoungTable::build(8);
  auto r = qstep(table, QExtractorState{1, 0, 0}, 1);
  EXPECT_EQ(r.state, (QExtractorState{2, 1, 0}));
  EXPECT_TRUE(r.emitted.empty());
  r = qstep(table, QExtractorState{2, 0, 0}, 1);
  EXPECT_EQ(r.state, (QExtractorState{3, 1, 1}));
  EXPECT_EQ(r.emitted, BitVec{1});
  EXPECT_THROW((void)qstep(table, QExtractorState{2, 1, 0}, 1), InvalidNodeError);
}

// Over all ballot paths to a node, outputs sort into bins matching the binary
// expansion of dim, each bin filled exactly once.
TEST(QStep, BinCardinality) {
  const auto table = YoungTable::build(12);
  for (int n = 0; n <= 12; ++n) {
    std::map<std::pair<int, int>, std::set<BitVec>> classes;
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
      QExtractorState s;
      BitVec out;
      bool valid = true;
      for (int i = 0; i < n && valid; ++i) {
        const Bit b = static_cast<Bit>((x >> i) & 1U);
        if (b && 2 * (s.t + 1) > s.n + 1) {
          valid = false;
          break;
        }
        auto r = qstep(table, s, b);
        s = r.state;
        out.insert(out.end(), r.emitted.begin(), r.emitted.end());
      }
      if (!valid) continue;
      ASSERT_EQ(static_cast<int>(out.size()), s.l);
      EXPECT_TRUE((classes[{s.t, s.l}].insert(out).second));
    }
    for (int t = 0; 2 * t <= n; ++t) {
      std::map<int, std::size_t> expected;
      for (int l : set_bit_positions(young_dim(n, t))) expected[l] = std::size_t{1} << l;
      std::map<int, std::size_t> got;
      for (const auto& [key, outs] : classes) {
        if (key.first == t) got[key.second] = outs.size();
      }
      EXPECT_EQ(got, expected) << n << "," << t;
    }
  }
}
