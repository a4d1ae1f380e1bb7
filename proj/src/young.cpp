#include "selias/young.hpp"

#include <stdexcept>
#include <string>

#include "selias/errors.hpp"

namespace selias {

namespace {

BigInt binomial(int n, int t) {
  BigInt c = 1;
  for (int i = 1; i <= t; ++i) c = c * (n - t + i) / i;
  return c;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_valid(int n, int t) {
  if (!YoungNode{n, t}.valid()) {
    throw DomainError("(" + std::to_string(n) + "," + std::to_string(t) + ") is not a Young diagram");
  }
}

}  // namespace

BigInt young_dim(int n, int t) {
  if (!YoungNode{n, t}.valid()) return 0;
  const BigInt num = binomial(n, t) * (n - 2 * t + 1);
  const int den = n - t + 1;
  if (num % den != 0) throw std::logic_error("two-row dimension formula is not integral");
  return num / den;
}

BigInt hook_dim_oracle(int n, int t) {
  require_valid(n, t);
  const int rows[2] = {n - t, t};
  BigInt hooks = 1;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < rows[r]; ++c) {
      const int arm = rows[r] - c - 1;
      const int leg = (r == 0 && c < rows[1]) ? 1 : 0;
      hooks *= arm + leg + 1;
    }
  }
  const BigInt f = factorial(n);
  if (f % hooks != 0) throw std::logic_error("hook product does not divide n!");
  return f / hooks;
}

BigInt path_count(int n, int t) {
  require_valid(n, t);
  // ways[k] = ballot paths reaching k second-row boxes after `step` boxes.
  std::vector<BigInt> ways(static_cast<std::size_t>(t) + 1, 0);
  ways[0] = 1;
  for (int step = 1; step <= n; ++step) {
    for (int k = std::min(t, step / 2); k >= 1; --k) {
      // reach k either by a row-one box (from k, if k <= (step-1)/2) or a row-two box
      BigInt from_row_one = (2 * k <= step - 1) ? ways[k] : BigInt(0);
      ways[k] = from_row_one + ways[k - 1];
    }
  }
  return ways[t];
}

YoungTable YoungTable::build(int max_n, int cap) {
  if (max_n < 0) throw DomainError("Young table size must be nonnegative");
  if (max_n > cap) throw ResourceLimitError("Young table exceeds the configured cap");
  YoungTable table;
  table.rows_.resize(static_cast<std::size_t>(max_n) + 1);
  table.rows_[0] = {BigInt(1)};
  for (int n = 1; n <= max_n; ++n) {
    auto& row = table.rows_[n];
    row.resize(static_cast<std::size_t>(n / 2) + 1);
    const auto& prev = table.rows_[n - 1];
    for (int t = 0; t <= n / 2; ++t) {
      BigInt v = 0;
      if (2 * t <= n - 1) v += prev[t];
      if (t >= 1) v += prev[t - 1];
      row[t] = std::move(v);
    }
  }
  return table;
}

const BigInt& YoungTable::dim(int n, int t) const {
  static const BigInt zero{0};
  if (n > max_n()) throw ResourceLimitError("Young row " + std::to_string(n) + " not in table");
  if (!YoungNode{n, t}.valid()) return zero;
  return rows_[n][t];
}

bool YoungTable::bit(int n, int t, int l) const {
  if (l < 0) return false;
  const BigInt& v = dim(n, t);
  return v != 0 && boost::multiprecision::bit_test(v, static_cast<unsigned>(l));
}

QStepResult qstep(const YoungTable& table, QExtractorState state, Bit pbit) {
  if (!YoungNode{state.n + 1, state.t + pbit}.valid()) {
    throw InvalidNodeError("second Young row would exceed the first");
  }
  QStepResult r;
  r.state = protocol_advance(table, state, pbit, [&](Bit x) { r.emitted.push_back(x); });
  return r;
}

}  // namespace selias
