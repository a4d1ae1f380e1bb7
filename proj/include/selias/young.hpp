#pragma once

#include <vector>

#include "selias/binomial.hpp"
#include "selias/bits.hpp"
#include "selias/protocol.hpp"

namespace selias {

/// Two-row Young diagram with rows (n - t, t).
struct YoungNode {
  int n = 0;
  int t = 0;

  /// Rows nonincreasing: 0 <= t <= n - t.
  [[nodiscard]] bool valid() const { return n >= 0 && t >= 0 && 2 * t <= n; }

  friend auto operator<=>(const YoungNode&, const YoungNode&) = default;
};

/// Dimension of the S_n irrep (n - t, t) via the two-row closed form
/// C(n,t) (n - 2t + 1) / (n - t + 1). Zero for invalid nodes.
/// Throws std::logic_error if the division is ever inexact.
BigInt young_dim(int n, int t);

/// n! / prod(hook lengths), computed box by box on the diagram.
/// DomainError for invalid nodes.
BigInt hook_dim_oracle(int n, int t);

/// Number of ballot paths from the empty diagram to (n - t, t).
/// DomainError for invalid nodes.
BigInt path_count(int n, int t);

/// Irrep dimensions for every node with n <= max_n, queried bitwise.
/// The quantum counterpart of BinomialTable; invalid nodes have size zero.
class YoungTable {
 public:
  static constexpr int kDefaultCap = 4096;

  static YoungTable build(int max_n, int cap = kDefaultCap);

  [[nodiscard]] int max_n() const { return static_cast<int>(rows_.size()) - 1; }
  [[nodiscard]] const BigInt& dim(int n, int t) const;
  [[nodiscard]] bool bit(int n, int t, int l) const;

 private:
  std::vector<std::vector<BigInt>> rows_;  // rows_[n][t], t <= n/2
};

/// Extractor state on Young's lattice; t counts second-row boxes.
using QExtractorState = ExtractorState;

struct QStepResult {
  QExtractorState state;
  BitVec emitted;
};

/// The streaming step with irrep dimensions in place of binomial coefficients.
/// pbit = 0 adds a box to row one, pbit = 1 to row two.
/// Throws InvalidNodeError if pbit = 1 would make row two longer than row one.
QStepResult qstep(const YoungTable& table, QExtractorState state, Bit pbit);

}  // namespace selias
