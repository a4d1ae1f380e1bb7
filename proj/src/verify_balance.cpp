#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include <omp.h>

#include "selias/errors.hpp"
#include "selias/protocol.hpp"
#include "selias/streaming.hpp"
#include "selias/verify.hpp"

namespace selias::verify {

namespace {

// Polynomial in (p0, p1): monomial (zeros, ones) -> integer coefficient.
using Poly = std::map<std::pair<int, int>, std::int64_t>;

struct FinalKey {
  int t, l, position;
  std::uint64_t others;
  friend auto operator<=>(const FinalKey&, const FinalKey&) = default;
};

struct EmissionKey {
  PausableState memory;
  std::uint64_t earlier;
  friend auto operator<=>(const EmissionKey&, const EmissionKey&) = default;
};

struct Groups {
  std::map<FinalKey, std::array<Poly, 2>> finals;
  std::map<EmissionKey, std::array<Poly, 2>> emissions;

  void merge(const Groups& other) {
    for (const auto& [key, polys] : other.finals) {
      auto& mine = finals[key];
      for (int b = 0; b < 2; ++b) {
        for (const auto& [mono, c] : polys[b]) mine[b][mono] += c;
      }
    }
    for (const auto& [key, polys] : other.emissions) {
      auto& mine = emissions[key];
      for (int b = 0; b < 2; ++b) {
        for (const auto& [mono, c] : polys[b]) mine[b][mono] += c;
      }
    }
  }
};

std::uint64_t drop_bit(std::uint64_t word, int i) {
  const std::uint64_t low = word & ((std::uint64_t{1} << i) - 1);
  return low | ((word >> (i + 1)) << i);
}

void process_input(const BinomialTable& table, int n, std::uint64_t s, Groups& g) {
  // Fully streaming: final node and output word.
  ExtractorState st = initial_state();
  std::uint64_t word = 0;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    const Bit b = static_cast<Bit>((s >> i) & 1U);
    ones += b;
    int emitted = 0;
    st = protocol_advance(table, st, b, [&](Bit x) {
      word |= static_cast<std::uint64_t>(x) << (st.l + emitted);
      ++emitted;
    });
  }
  const std::pair<int, int> mono{n - ones, ones};
  for (int k = 0; k < st.l; ++k) {
    g.finals[FinalKey{st.t, st.l, k, drop_bit(word, k)}][(word >> k) & 1U][mono] += 1;
  }

  // On-demand: the memory right after each emission.
  PausableState m;
  int pos = 0;
  int prefix_ones = 0;
  std::uint64_t earlier = 0;
  auto next = [&](Bit& b) {
    if (pos >= n) return false;
    b = static_cast<Bit>((s >> pos) & 1U);
    prefix_ones += b;
    ++pos;
    return true;
  };
  for (int k = 0;; ++k) {
    const PullResult r = protocol_pull(table, m, next);
    if (r.status == PullStatus::kInputExhausted) break;
    const std::pair<int, int> prefix{pos - prefix_ones, prefix_ones};
    g.emissions[EmissionKey{m, earlier}][r.bit][prefix] += 1;
    earlier |= static_cast<std::uint64_t>(r.bit) << k;
  }
}

BalanceReport finalize(int n, const Groups& g) {
  BalanceReport rep;
  rep.n = n;
  rep.final_groups = g.finals.size();
  rep.emission_groups = g.emissions.size();
  constexpr std::size_t kMaxListed = 16;
  std::uint64_t final_bad = 0;
  for (const auto& [key, polys] : g.finals) {
    if (polys[0] != polys[1] && ++final_bad <= kMaxListed) {
      rep.violations.push_back("final node (" + std::to_string(key.t) + "," + std::to_string(key.l) +
                               ") output position " + std::to_string(key.position) + " is unbalanced");
    }
  }
  std::uint64_t emission_bad = 0;
  for (const auto& [key, polys] : g.emissions) {
    if (polys[0] != polys[1] && ++emission_bad <= kMaxListed) {
      const ExtractorState& s = key.memory.node;
      rep.violations.push_back("emission into (" + std::to_string(s.n) + "," + std::to_string(s.t) + "," +
                               std::to_string(s.l) + ") is unbalanced");
    }
  }
  if (final_bad + emission_bad > kMaxListed) {
    rep.violations.push_back(std::to_string(final_bad + emission_bad) + " unbalanced groups in total");
  }
  return rep;
}

void check_n(int n) {
  if (n < 0 || n > kBalanceCap) {
    throw ResourceLimitError("balanced_paths supports 0 <= n <= " + std::to_string(kBalanceCap));
  }
}

}  // namespace

BalanceReport balanced_paths_ref(int n) {
  check_n(n);
  const BinomialTable table = BinomialTable::build(n);
  Groups g;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) process_input(table, n, s, g);
  return finalize(n, g);
}

BalanceReport balanced_paths(int n) {
  check_n(n);
  const BinomialTable table = BinomialTable::build(n);
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << n);
  std::vector<Groups> locals(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    Groups& g = locals[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) process_input(table, n, static_cast<std::uint64_t>(s), g);
  }
  Groups merged;
  for (const Groups& g : locals) merged.merge(g);
  return finalize(n, merged);
}

Rational enumerated_yield(int n, const SourceModel& model) {
  if (n < 0 || n > 24) throw ResourceLimitError("enumerated_yield enumerates 2^n strings; n <= 24");
  const BinomialTable table = BinomialTable::build(n);
  std::vector<std::uint64_t> length_by_weight(static_cast<std::size_t>(n) + 1, 0);
  BitVec bits(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    for (int i = 0; i < n; ++i) bits[i] = static_cast<Bit>((s >> i) & 1U);
    const RunResult r = run(table, bits);
    if (r.ledger.out_len + r.ledger.purity_len != n) throw std::logic_error("tape conservation broken");
    length_by_weight[r.final_state.t] += r.output.size();
  }
  Rational total = 0;
  for (int w = 0; w <= n; ++w) total += model.string_probability(n, w) * length_by_weight[w];
  return total;
}

YieldSweepReport yield_bound_sweep(int max_n, const std::vector<SourceModel>& models) {
  YieldSweepReport rep;
  const BinomialTable table = BinomialTable::build(std::max(max_n, 0));
  for (int n = 0; n <= max_n; ++n) {
    for (const SourceModel& model : models) {
      YieldRow row{n, model.p0_double(), expected_yield(table, n, model), yield_lower_bound(n, model.p0_double())};
      if (!(row.margin() > 0.0)) {
        rep.violations.push_back("n=" + std::to_string(n) + " p0=" + std::to_string(row.p0) +
                                 ": yield below the lower bound");
      }
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

}  // namespace selias::verify
