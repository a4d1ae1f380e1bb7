#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <tuple>

#include <omp.h>

#include "selias/errors.hpp"
#include "selias/protocol.hpp"
#include "selias/streaming.hpp"
#include "selias/verify.hpp"

namespace selias::verify {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

struct NodeAcc {
  std::uint64_t count = 0;
  std::uint64_t duplicates = 0;
  std::vector<std::uint64_t> seen;  // bitmap over l-bit output words
};

struct Accumulator {
  explicit Accumulator(int n) : n(n), nodes(static_cast<std::size_t>(n + 1) * (n + 1)) {}

  int n;
  std::vector<NodeAcc> nodes;  // index t * (n + 1) + l
  std::uint64_t steps = 0;
  std::uint64_t step_violations = 0;
  std::uint64_t first_bad_input = kNone;

  NodeAcc& at(int t, int l) { return nodes[static_cast<std::size_t>(t) * (n + 1) + l]; }

  void merge(const Accumulator& other) {
    steps += other.steps;
    step_violations += other.step_violations;
    first_bad_input = std::min(first_bad_input, other.first_bad_input);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      NodeAcc& mine = nodes[i];
      const NodeAcc& theirs = other.nodes[i];
      mine.count += theirs.count;
      mine.duplicates += theirs.duplicates;
      if (theirs.seen.empty()) continue;
      if (mine.seen.empty()) {
        mine.seen = theirs.seen;
        continue;
      }
      for (std::size_t w = 0; w < mine.seen.size(); ++w) {
        mine.duplicates += static_cast<std::uint64_t>(std::popcount(mine.seen[w] & theirs.seen[w]));
        mine.seen[w] |= theirs.seen[w];
      }
    }
  }
};

void process_input(const BinomialTable& table, std::uint64_t s, Accumulator& acc) {
  const int n = acc.n;
  ExtractorState st = initial_state();
  TapeLedger ledger;
  std::uint64_t word = 0;
  bool bad = false;
  for (int i = 0; i < n; ++i) {
    const Bit b = static_cast<Bit>((s >> i) & 1U);
    int emitted = 0;
    st = protocol_advance(table, st, b, [&](Bit x) {
      word |= static_cast<std::uint64_t>(x) << (st.l + emitted);
      ++emitted;
    });
    ledger.record_step(emitted);
    ++acc.steps;
    const BigInt& size = table.value(st.n, st.t);
    const bool resident = table.bit(st.n, st.t, st.l);
    const bool bounded = size > 0 && st.l <= static_cast<int>(boost::multiprecision::msb(size));
    const bool conserved = ledger.out_len + ledger.purity_len == st.n && ledger.out_len == st.l;
    if (!(resident && bounded && conserved && st.t <= st.n)) bad = true;
  }
  if (bad) {
    ++acc.step_violations;
    acc.first_bad_input = std::min(acc.first_bad_input, s);
  }
  NodeAcc& node = acc.at(st.t, st.l);
  ++node.count;
  if (node.seen.empty()) node.seen.assign(((std::uint64_t{1} << st.l) + 63) / 64, 0);
  std::uint64_t& slot = node.seen[word / 64];
  const std::uint64_t mask = std::uint64_t{1} << (word % 64);
  if (slot & mask) ++node.duplicates;
  slot |= mask;
}

EquivalenceReport finalize(const BinomialTable& table, const Accumulator& acc) {
  const int n = acc.n;
  EquivalenceReport rep;
  rep.n = n;
  rep.steps_checked = acc.steps;
  if (acc.step_violations > 0) {
    rep.violations.push_back(std::to_string(acc.step_violations) +
                             " inputs broke a per-step invariant; first is input " +
                             std::to_string(acc.first_bad_input));
  }
  for (int t = 0; t <= n; ++t) {
    BigInt covered = 0;
    std::vector<int> reached;
    for (int l = n; l >= 0; --l) {
      const NodeAcc& node = acc.nodes[static_cast<std::size_t>(t) * (n + 1) + l];
      if (node.count == 0) continue;
      const std::uint64_t expect = std::uint64_t{1} << l;
      const bool complete = node.count == expect && node.duplicates == 0;
      rep.nodes.push_back(NodeRecord{t, l, node.count, complete});
      reached.push_back(l);
      covered += node.count;
      const std::string where = "(" + std::to_string(n) + "," + std::to_string(t) + "," + std::to_string(l) + ")";
      if (node.count != expect) {
        rep.violations.push_back("node " + where + " holds " + std::to_string(node.count) +
                                 " strings, expected " + std::to_string(expect));
      }
      if (node.duplicates != 0) {
        rep.violations.push_back("node " + where + " has " + std::to_string(node.duplicates) +
                                 " repeated outputs");
      }
    }
    if (covered != table.value(n, t)) {
      rep.violations.push_back("type " + std::to_string(t) + " covers " + covered.str() +
                               " strings, expected C(n,t) = " + table.value(n, t).str());
    }
    if (reached != table.layout(n, t).bins) {
      rep.violations.push_back("type " + std::to_string(t) + " reaches levels that differ from its block layout");
    }
  }
  std::sort(rep.nodes.begin(), rep.nodes.end(),
            [](const NodeRecord& a, const NodeRecord& b) { return std::tie(a.t, a.l) < std::tie(b.t, b.l); });
  return rep;
}

void check_n(int n) {
  if (n < 0 || n > kEquivalenceCap) {
    throw ResourceLimitError("exhaustive equivalence supports 0 <= n <= " + std::to_string(kEquivalenceCap));
  }
}

}  // namespace

EquivalenceReport exhaustive_equivalence_ref(int n) {
  check_n(n);
  const BinomialTable table = BinomialTable::build(n);
  Accumulator acc(n);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) process_input(table, s, acc);
  return finalize(table, acc);
}

EquivalenceReport exhaustive_equivalence(int n) {
  check_n(n);
  const BinomialTable table = BinomialTable::build(n);
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << n);
  std::vector<Accumulator> locals(static_cast<std::size_t>(omp_get_max_threads()), Accumulator(n));
#pragma omp parallel
  {
    Accumulator& acc = locals[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) process_input(table, static_cast<std::uint64_t>(s), acc);
  }
  Accumulator merged(n);
  for (const Accumulator& acc : locals) merged.merge(acc);
  return finalize(table, merged);
}

std::vector<std::string> check_population_recursion(const EquivalenceReport& at_n,
                                                    const EquivalenceReport& at_next) {
  std::vector<std::string> out;
  if (at_next.n != at_n.n + 1) {
    out.push_back("reports are not for consecutive lengths");
    return out;
  }
  auto total = [](const EquivalenceReport& r, int t) {
    BigInt s = 0;
    for (const NodeRecord& node : r.nodes) {
      if (node.t == t) s += node.strings;
    }
    return s;
  };
  for (int t = 0; t <= at_next.n; ++t) {
    const BigInt parents = total(at_n, t) + total(at_n, t - 1);
    std::vector<int> levels;
    for (const NodeRecord& node : at_next.nodes) {
      if (node.t != t) continue;
      levels.push_back(node.l);
      if (node.strings != (std::uint64_t{1} << node.l)) {
        out.push_back("child node (" + std::to_string(t) + "," + std::to_string(node.l) + ") is not a single bin");
      }
    }
    std::sort(levels.rbegin(), levels.rend());
    if (levels != set_bit_positions(parents)) {
      out.push_back("type " + std::to_string(t) + " at n+1 is not the binary sum of its parents");
    }
  }
  return out;
}

}  // namespace selias::verify
