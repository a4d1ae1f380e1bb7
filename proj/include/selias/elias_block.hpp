#pragma once

#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "selias/binomial.hpp"
#include "selias/bits.hpp"

namespace selias {

using Rational = boost::multiprecision::cpp_rational;

/// Block-Elias image of one input string: type, bin exponent, index within bin.
struct BlockCodeword {
  int t = 0;
  int l = 0;
  BigInt alpha;  // in [0, 2^l)

  friend bool operator==(const BlockCodeword&, const BlockCodeword&) = default;
};

/// I.i.d. Bernoulli source; p0 is the probability of a 0 bit. Kept exact.
class SourceModel {
 public:
  /// DomainError unless 0 <= p0 <= 1.
  explicit SourceModel(Rational p0);
  /// Convenience for decimal literals: p0 = num/den.
  static SourceModel ratio(long num, long den) { return SourceModel(Rational(num, den)); }

  [[nodiscard]] const Rational& p0() const { return p0_; }
  [[nodiscard]] Rational p1() const { return 1 - p0_; }
  [[nodiscard]] double p0_double() const;

  /// Probability of any single string of length n and weight t.
  [[nodiscard]] Rational string_probability(int n, int t) const;

 private:
  Rational p0_;
};

/// Hamming weight.
int type_of(std::span<const Bit> s);

/// Colexicographic rank among strings of equal length and weight.
///
/// The last bit of s is position 0, so the rank equals the position of s in
/// the numeric order of same-weight strings read as binary numbers.
BigInt rank_in_type(const BinomialTable& table, std::span<const Bit> s);

/// Places rank in consecutive bins of sizes 2^L1 > 2^L2 > ... (the layout order).
/// DomainError unless 0 <= rank < C(n,t).
BlockCodeword bin_of_rank(const BinomialTable& table, int n, int t, const BigInt& rank);

/// Full block map: string -> (T, L, alpha).
BlockCodeword block_encode(const BinomialTable& table, std::span<const Bit> s);

/// Expected number of output bits of the block extractor on n source bits, exact.
/// Summed type by type; never enumerates 2^n strings.
Rational expected_yield(const BinomialTable& table, int n, const SourceModel& model);

/// H(L | T = t) in bits for the layout of C(n,t). DomainError unless 0 <= t <= n.
double conditional_bin_entropy(const BinomialTable& table, int n, int t);

/// Binary entropy H(p) in bits.
double binary_entropy(double p);

/// Lower bound n H(p) - log2(n+1) - 2 on the expected block yield.
double yield_lower_bound(int n, double p0);

double to_double(const Rational& r);

}  // namespace selias
