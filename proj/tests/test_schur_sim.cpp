#include <cmath>
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "selias/elias_block.hpp"
#include "selias/errors.hpp"
#include "selias/schur_sim.hpp"
#include "selias/young.hpp"

using namespace selias;
using namespace selias::sim;

namespace {

constexpr double kTol = 1e-10;

double amp(const std::vector<CgBranch>& branches, int t, int u) {
  for (const auto& b : branches) {
    if (b.t == t && b.u == u) return b.amplitude;
  }
  return 0.0;
}

}  // namespace

TEST(CgStep, SpinHalfCoupling) {
  // |0>|1>: triplet m=0 and singlet, both with weight 1/sqrt2.
  const auto br = cg_step(1, 0, 0, 1);
  ASSERT_EQ(br.size(), 2U);
  EXPECT_NEAR(amp(br, 0, 1), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(amp(br, 1, 0), 1 / std::sqrt(2.0), kTol);
  // |1>|0>: singlet picks up the minus sign.
  const auto br2 = cg_step(1, 0, 1, 0);
  EXPECT_NEAR(amp(br2, 0, 1), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(amp(br2, 1, 0), -1 / std::sqrt(2.0), kTol);
  // |0>|0> only reaches the top of the triplet.
  const auto br3 = cg_step(1, 0, 0, 0);
  ASSERT_EQ(br3.size(), 1U);
  EXPECT_NEAR(br3[0].amplitude, 1.0, kTol);
  EXPECT_THROW((void)cg_step(2, 2, 0, 0), DomainError);
}

TEST(SchurTransform, IsUnitaryWithIrrepMultiplicities) {
  for (int n = 1; n <= 8; ++n) {
    const auto v = schur_transform(n);
    std::map<SchurLabel, std::vector<double>> rows;
    for (std::size_t s = 0; s < v.columns.size(); ++s) {
      for (const auto& [label, a] : v.columns[s]) {
        auto& row = rows[label];
        row.resize(v.columns.size());
        row[s] = a;
      }
    }
    EXPECT_EQ(rows.size(), std::size_t{1} << n);  // square, so unitary iff orthonormal
    std::map<int, std::set<TapeBits>> paths;
    for (const auto& [label, row] : rows) paths[label.t].insert(label.path);
    for (const auto& [t, ps] : paths) EXPECT_EQ(ps.size(), young_dim(n, t)) << n << "," << t;
    for (auto i = rows.begin(); i != rows.end(); ++i) {
      for (auto j = i; j != rows.end(); ++j) {
        double dot = 0;
        for (std::size_t s = 0; s < v.columns.size(); ++s) dot += i->second[s] * j->second[s];
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, kTol);
      }
    }
  }
  EXPECT_THROW((void)schur_transform(11), ResourceLimitError);
}

// A collective rotation only moves the SU(2) index: the weight on each
// (t, path) block is invariant.
TEST(SchurTransform, CollectiveRotationPreservesBlocks) {
  const double th = 0.9;
  const double ph = 0.4;
  const std::complex<double> w[2][2] = {
      {std::cos(th / 2), -std::exp(std::complex<double>(0, ph)) * std::sin(th / 2)},
      {std::exp(std::complex<double>(0, -ph)) * std::sin(th / 2), std::cos(th / 2)}};
  for (int n = 1; n <= 6; ++n) {
    const auto v = schur_transform(n);
    for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
      const auto in = oracle::rotate_product(s, n, w);
      std::map<SchurLabel, std::complex<double>> out;
      for (std::uint64_t x = 0; x < in.size(); ++x) {
        for (const auto& [label, a] : v.columns[x]) out[label] += a * in[x];
      }
      std::map<std::pair<int, TapeBits>, double> before;
      std::map<std::pair<int, TapeBits>, double> after;
      for (const auto& [label, a] : v.columns[s]) before[{label.t, label.path}] += a * a;
      for (const auto& [label, a] : out) after[{label.t, label.path}] += std::norm(a);
      for (const auto& [key, p] : before) EXPECT_NEAR(after[key], p, 1e-9);
      for (const auto& [key, p] : after) EXPECT_NEAR(before[key], p, 1e-9);
    }
  }
}

TEST(StreamingConcentrator, IsIsometry) {
  for (int n = 1; n <= 8; ++n) EXPECT_LT(streaming_concentrator(n).max_orthonormality_deviation(), kTol) << n;
}

TEST(KnownBasis, PerfectPairsAndClassicalYield) {
  const auto table = BinomialTable::build(12);
  for (int n : {2, 5, 9, 12}) {
    for (int k10 : {1, 3, 5, 8}) {
      const double p0 = k10 / 10.0;
      const auto st = simulate_known_basis(p0, n);
      EXPECT_NEAR(st.norm_squared(), 1.0, kTol);
      for (int k = 0; k < max_tape_length(st); ++k) {
        const auto a = analyze_pair(st, k);
        EXPECT_NEAR(a.fidelity, 1.0, kTol);
        EXPECT_LT(a.alice_marginal_deviation, kTol);
        EXPECT_LT(a.bob_marginal_deviation, kTol);
        EXPECT_LT(a.memory_trace_distance, kTol);
      }
      double mean_l = 0;
      for (const auto& [l, p] : alice_l_distribution(st)) mean_l += l * p;
      EXPECT_NEAR(mean_l, to_double(expected_yield(table, n, SourceModel::ratio(k10, 10))), 1e-9);
    }
  }
}

TEST(Universal, PerfectPairs) {
  for (int n = 1; n <= 6; ++n) {
    for (double theta : {0.3, 0.7, 1.1}) {
      const auto st = simulate_universal(TwoQubitState::schmidt(0.3, theta), n);
      EXPECT_NEAR(st.norm_squared(), 1.0, 1e-9);
      for (int k = 0; k < max_tape_length(st); ++k) EXPECT_NEAR(pair_fidelity(st, k), 1.0, 1e-9);
    }
  }
}

// Schur-Weyl weights of psi^{(x) n}: Pr(t) = dim(n,t) * s_(n-t,t)(p0, p1), and
// given t the tape length l is distributed as the dim's bins.
TEST(Universal, IrrepDistributionMatchesSchurPolynomial) {
  const double p0 = 0.3;
  const double p1 = 0.7;
  const auto table = YoungTable::build(6);
  for (int n = 1; n <= 6; ++n) {
    const auto st = simulate_universal(TwoQubitState::schmidt(p0, 0.7), n);
    const auto t_dist = alice_t_distribution(st);
    for (int t = 0; 2 * t <= n; ++t) {
      double schur = 0;
      for (int k = 0; k <= n - 2 * t; ++k) schur += std::pow(p0, n - t - k) * std::pow(p1, t + k);
      const double expected = young_dim(n, t).convert_to<double>() * schur;
      const auto it = t_dist.find(t);
      EXPECT_NEAR(it == t_dist.end() ? 0.0 : it->second, expected, 1e-9) << n << "," << t;
    }
  }
  EXPECT_EQ(max_tape_length(simulate_universal(TwoQubitState::schmidt(p0, 0.2), 2)), 0);
}

TEST(Universal, RotationCovariance) {
  const double a = 0.61;
  const Qubit2x2 w{{{std::cos(a), -std::sin(a) * std::complex<double>(0, 1)},
                    {-std::sin(a) * std::complex<double>(0, 1), std::cos(a)}}};
  for (int n = 2; n <= 6; ++n) {
    const auto psi = TwoQubitState::schmidt(0.2, 1.1);
    const auto base = simulate_universal(psi, n);
    const auto rotated = simulate_universal(rotate_both(psi, w), n);
    EXPECT_EQ(max_tape_length(base), max_tape_length(rotated));
    for (int k = 0; k < max_tape_length(base); ++k) {
      const auto x = analyze_pair(base, k, false);
      const auto y = analyze_pair(rotated, k, false);
      EXPECT_NEAR(x.fidelity, y.fidelity, 1e-9);
      EXPECT_NEAR(x.support, y.support, 1e-9);
    }
  }
  EXPECT_THROW((void)simulate_universal(TwoQubitState{}, 2), DomainError);
  EXPECT_THROW((void)simulate_universal(TwoQubitState::schmidt(0.5, 0), 7), ResourceLimitError);
}

TEST(Huffman, DefectiveFirstPair) {
  const auto h = huffman_counterexample();
  const double c = 1 / (2 * std::sqrt(2.0));
  const double expected[4][4] = {{0.5, 0, 0, c}, {0, 0, 0, 0}, {0, 0, 0, 0}, {c, 0, 0, 0.5}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(h.rho[i][j] - expected[i][j]), 0.0, 1e-12);
  }
  EXPECT_NEAR(h.fidelity, (1 + std::sqrt(2.0)) / (2 * std::sqrt(2.0)), 1e-12);
}

TEST(VonNeumannLift, HaltingAndFidelity) {
  for (double p0 : {0.2, 0.5}) {
    for (int pairs : {2, 4, 6}) {
      const auto st = simulate_von_neumann(p0, pairs);
      EXPECT_NEAR(st.norm_squared(), 1.0, kTol);
      const double q = 1 - 2 * p0 * (1 - p0);
      EXPECT_NEAR(nonhalting_amplitude(st), std::pow(q, pairs / 2.0), kTol);
      const auto a = analyze_pair(st, 0);
      EXPECT_NEAR(a.fidelity, 1.0, kTol);
      EXPECT_NEAR(a.support, 1 - std::pow(q, pairs), kTol);
    }
  }
}

TEST(Analysis, UndefinedPairThrows) {
  const auto st = simulate_known_basis(0.3, 1);
  EXPECT_EQ(max_tape_length(st), 0);
  EXPECT_THROW((void)analyze_pair(st, 0), DomainError);
  EXPECT_EQ(shannon_entropy({{0, 1.0}}), 0.0);
}
