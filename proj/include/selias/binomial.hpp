#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace selias {

using BigInt = boost::multiprecision::cpp_int;

/// Binary-expansion decomposition of C(n,t) into bins of size 2^L.
struct BinLayout {
  int n = 0;
  int t = 0;
  std::vector<int> bins;  // strictly descending exponents

  friend bool operator==(const BinLayout&, const BinLayout&) = default;
};

/// Exact Pascal triangle rows 0..max_n.
///
/// Values are arbitrary-precision and built by repeated addition, so every
/// entry satisfies the Pascal recursion exactly. Queries outside 0 <= t <= n
/// return zero, which keeps the streaming step total at the lattice edges.
/// The table is immutable; extended() returns a new, larger table.
class BinomialTable {
 public:
  /// Rows beyond this need an explicit cap override (O(n^3) bits of storage).
  static constexpr int kDefaultCap = 4096;

  /// Throws ResourceLimitError when max_n > cap, DomainError when max_n < 0.
  static BinomialTable build(int max_n, int cap = kDefaultCap);

  [[nodiscard]] int max_n() const { return static_cast<int>(rows_.size()) - 1; }

  /// C(n,t); zero for t < 0 or t > n. Throws ResourceLimitError if n > max_n().
  [[nodiscard]] const BigInt& value(int n, int t) const;

  /// Bit l of C(n,t) (0 whenever C(n,t) = 0).
  [[nodiscard]] bool bit(int n, int t, int l) const;

  /// Set-bit positions of C(n,t), descending. DomainError unless 0 <= t <= n.
  [[nodiscard]] BinLayout layout(int n, int t) const;

  /// A new table with rows up to new_max_n; this table is untouched.
  [[nodiscard]] BinomialTable extended(int new_max_n, int cap = kDefaultCap) const;

 private:
  std::vector<std::vector<BigInt>> rows_;
};

/// Set-bit positions of an arbitrary nonnegative integer, descending.
std::vector<int> set_bit_positions(const BigInt& value);

}  // namespace selias
