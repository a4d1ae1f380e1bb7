#include "selias/binomial.hpp"

#include <string>

#include "selias/errors.hpp"

namespace selias {

namespace {

const BigInt& zero() {
  static const BigInt z{0};
  return z;
}

void append_rows(std::vector<std::vector<BigInt>>& rows, int max_n) {
  rows.reserve(static_cast<std::size_t>(max_n) + 1);
  while (static_cast<int>(rows.size()) <= max_n) {
    const int n = static_cast<int>(rows.size());
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
    row.front() = 1;
    row.back() = 1;
    const auto& prev = rows.empty() ? row : rows.back();
    for (int t = 1; t < n; ++t) row[t] = prev[t - 1] + prev[t];
    rows.push_back(std::move(row));
  }
}

void check_cap(int max_n, int cap) {
  if (max_n < 0) throw DomainError("binomial table size must be nonnegative");
  if (max_n > cap) {
    throw ResourceLimitError("binomial table of " + std::to_string(max_n) +
                             " rows exceeds the configured cap " + std::to_string(cap));
  }
}

}  // namespace

BinomialTable BinomialTable::build(int max_n, int cap) {
  check_cap(max_n, cap);
  BinomialTable table;
  append_rows(table.rows_, max_n);
  return table;
}

BinomialTable BinomialTable::extended(int new_max_n, int cap) const {
  check_cap(new_max_n, cap);
  BinomialTable table = *this;
  append_rows(table.rows_, new_max_n);
  return table;
}

const BigInt& BinomialTable::value(int n, int t) const {
  if (n > max_n()) {
    throw ResourceLimitError("binomial row " + std::to_string(n) + " not in table (max_n " +
                             std::to_string(max_n()) + ")");
  }
  if (n < 0 || t < 0 || t > n) return zero();
  return rows_[n][t];
}

bool BinomialTable::bit(int n, int t, int l) const {
  if (l < 0) return false;
  const BigInt& v = value(n, t);
  return v != 0 && boost::multiprecision::bit_test(v, static_cast<unsigned>(l));
}

BinLayout BinomialTable::layout(int n, int t) const {
  if (n < 0 || t < 0 || t > n) throw DomainError("bin layout requires 0 <= t <= n");
  return BinLayout{n, t, set_bit_positions(value(n, t))};
}

std::vector<int> set_bit_positions(const BigInt& value) {
  std::vector<int> out;
  if (value <= 0) return out;
  for (int l = static_cast<int>(boost::multiprecision::msb(value)); l >= 0; --l) {
    if (boost::multiprecision::bit_test(value, static_cast<unsigned>(l))) out.push_back(l);
  }
  return out;
}

}  // namespace selias
