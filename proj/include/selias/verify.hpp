#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selias/binomial.hpp"
#include "selias/elias_block.hpp"

namespace selias::verify {

/// Exhaustive checks are hard assertions: any violation is a defect.
/// Each OpenMP kernel has a serial `_ref` twin kept for cross-checking;
/// both produce identical reports.

struct NodeRecord {
  int t = 0;
  int l = 0;
  std::uint64_t strings = 0;      // inputs of length n that end at (n, t, l)
  bool outputs_complete = false;  // their l-bit outputs are exactly {0,1}^l

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct EquivalenceReport {
  int n = 0;
  std::vector<NodeRecord> nodes;  // ordered by (t, l)
  std::uint64_t steps_checked = 0;
  std::vector<std::string> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  friend bool operator==(const EquivalenceReport&, const EquivalenceReport&) = default;
};

constexpr int kEquivalenceCap = 20;

/// Runs the streaming extractor on all 2^n strings. Per final node: 2^l
/// strings with pairwise-distinct outputs; per type: sum of 2^l = C(n,t) and
/// the set of reached l equals the block layout. Every step is also checked
/// for node residency, l <= floor(log2 C(n,t)) and tape conservation.
EquivalenceReport exhaustive_equivalence(int n);
EquivalenceReport exhaustive_equivalence_ref(int n);

/// Node populations at n + 1 must be the binary sum of the parents' at n.
std::vector<std::string> check_population_recursion(const EquivalenceReport& at_n,
                                                    const EquivalenceReport& at_next);

struct BalanceReport {
  int n = 0;
  std::uint64_t final_groups = 0;     // (node, position, other output bits)
  std::uint64_t emission_groups = 0;  // (memory right after an emission, earlier outputs)
  std::vector<std::string> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  friend bool operator==(const BalanceReport&, const BalanceReport&) = default;
};

constexpr int kBalanceCap = 14;

/// Symbolic in p: each string of length n with w ones weighs p0^(n-w) p1^w.
/// For every final node, output position and assignment of the other output
/// bits, the weight polynomials behind bit 0 and bit 1 must be identical.
/// The same must hold at the moment of every emission in on-demand mode,
/// grouped by the memory state right after it and the earlier outputs.
BalanceReport balanced_paths(int n);
BalanceReport balanced_paths_ref(int n);

/// Sum over all 2^n strings of Pr(s) * |output(s)|, exactly.
Rational enumerated_yield(int n, const SourceModel& model);

struct YieldRow {
  int n = 0;
  double p0 = 0.0;
  Rational yield;
  double bound = 0.0;
  [[nodiscard]] double margin() const { return to_double(yield) - bound; }
};

struct YieldSweepReport {
  std::vector<YieldRow> rows;
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Exact expected yield against n H(p) - log2(n+1) - 2 for n = 1..max_n.
YieldSweepReport yield_bound_sweep(int max_n, const std::vector<SourceModel>& models);

struct StatReport {
  std::int64_t samples = 0;       // input bits
  std::int64_t output_bits = 0;
  std::int64_t segments = 0;
  double rate = 0.0;              // output_bits / samples
  double source_entropy = 0.0;    // H(p)
  double monobit_z = 0.0;
  double serial_z = 0.0;          // lag-1 agreement statistic
  double max_position_z = 0.0;    // worst per-position bias across segments
  int positions_tested = 0;

  friend bool operator==(const StatReport&, const StatReport&) = default;
};

constexpr int kDefaultSegment = 1024;

/// Seeded Bernoulli(p0) input through the extractor, restarted every
/// `segment_len` bits. Segment i draws from mt19937_64 seeded with
/// seed_seq{seed, i}; bit = (next() >> 11) * 2^-53 >= p0. Deterministic in
/// (p0, samples, seed, segment_len) regardless of thread count.
StatReport statistical_battery(double p0, std::int64_t samples, std::uint64_t seed,
                               int segment_len = kDefaultSegment);
StatReport statistical_battery_ref(double p0, std::int64_t samples, std::uint64_t seed,
                                   int segment_len = kDefaultSegment);

/// The input bits of segment i (exposed for tests and benchmarks).
BitVec segment_input(double p0, std::uint64_t seed, std::int64_t segment, int length);

}  // namespace selias::verify
