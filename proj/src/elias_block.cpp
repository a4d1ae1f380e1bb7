#include "selias/elias_block.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "selias/errors.hpp"

namespace selias {

namespace mp = boost::multiprecision;

SourceModel::SourceModel(Rational p0) : p0_(std::move(p0)) {
  if (p0_ < 0 || p0_ > 1) throw DomainError("source probability must lie in [0,1]");
}

double SourceModel::p0_double() const { return to_double(p0_); }

namespace {

Rational rpow(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rational SourceModel::string_probability(int n, int t) const {
  return rpow(p0_, n - t) * rpow(p1(), t);
}

int type_of(std::span<const Bit> s) {
  int t = 0;
  for (Bit b : s) t += b;
  return t;
}

BigInt rank_in_type(const BinomialTable& table, std::span<const Bit> s) {
  const int n = static_cast<int>(s.size());
  BigInt rank = 0;
  int seen = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (s[n - 1 - pos]) {
      ++seen;
      rank += table.value(pos, seen);
    }
  }
  return rank;
}

BlockCodeword bin_of_rank(const BinomialTable& table, int n, int t, const BigInt& rank) {
  if (t < 0 || t > n) throw DomainError("bin_of_rank requires 0 <= t <= n");
  if (rank < 0 || rank >= table.value(n, t)) throw DomainError("rank outside its type class");
  BigInt start = 0;
  for (int l : table.layout(n, t).bins) {
    const BigInt size = BigInt(1) << l;
    if (rank < start + size) return BlockCodeword{t, l, rank - start};
    start += size;
  }
  throw std::logic_error("bin layout does not cover its type class");
}

BlockCodeword block_encode(const BinomialTable& table, std::span<const Bit> s) {
  const int n = static_cast<int>(s.size());
  return bin_of_rank(table, n, type_of(s), rank_in_type(table, s));
}

Rational expected_yield(const BinomialTable& table, int n, const SourceModel& model) {
  // Pr(T) * sum_L (2^L / C) * L, and Pr(T) = C * Pr(string), so C cancels.
  Rational total = 0;
  for (int t = 0; t <= n; ++t) {
    BigInt weighted = 0;
    for (int l : table.layout(n, t).bins) weighted += (BigInt(1) << l) * l;
    if (weighted != 0) total += model.string_probability(n, t) * weighted;
  }
  return total;
}

double conditional_bin_entropy(const BinomialTable& table, int n, int t) {
  if (t < 0 || t > n) throw DomainError("conditional_bin_entropy requires 0 <= t <= n");
  using Float = mp::cpp_bin_float_50;
  const Float size(table.value(n, t));
  Float h = 0;
  for (int l : table.layout(n, t).bins) {
    const Float prob = Float(BigInt(1) << l) / size;
    h -= prob * mp::log2(prob);
  }
  return h.convert_to<double>();
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double yield_lower_bound(int n, double p0) {
  return n * binary_entropy(p0) - std::log2(static_cast<double>(n) + 1.0) - 2.0;
}

double to_double(const Rational& r) {
  const mp::cpp_bin_float_50 num(mp::numerator(r));
  const mp::cpp_bin_float_50 den(mp::denominator(r));
  return (num / den).convert_to<double>();
}

}  // namespace selias
