#pragma once

#include <cstdint>
#include <span>

#include "selias/binomial.hpp"
#include "selias/bits.hpp"
#include "selias/protocol.hpp"

namespace selias {

/// Output-tape and purity-tape lengths. The purity tape only ever holds
/// clean zeros, so its length is all there is to store.
struct TapeLedger {
  std::int64_t out_len = 0;
  std::int64_t purity_len = 0;

  /// Accounts for one input bit that produced `emitted` output bits: the input
  /// bit itself goes out first (or is erased onto the purity tape when nothing
  /// is emitted); every further emission pops a clean bit off the purity tape.
  void record_step(int emitted);

  friend bool operator==(const TapeLedger&, const TapeLedger&) = default;
};

struct StepResult {
  ExtractorState state;
  BitVec emitted;
};

ExtractorState initial_state();

StepResult step(const BinomialTable& table, ExtractorState state, Bit b);

struct RunResult {
  BitVec output;
  ExtractorState final_state;
  TapeLedger ledger;
};

/// Folds step over the input. The table must cover n = bits.size().
RunResult run(const BinomialTable& table, std::span<const Bit> bits);

/// Same, building a table just large enough.
RunResult run(std::span<const Bit> bits);

/// Disjoint pairs; odd-parity pairs emit their second bit ("01" -> 1, "10" -> 0).
BitVec von_neumann(std::span<const Bit> bits);

struct PauseRunResult {
  BitVec output;
  std::int64_t consumed = 0;
  PausableState state;
  bool input_exhausted = false;  // demand not met
};

/// On-demand mode: reads input until exactly `demand` bits have been emitted
/// or the input runs out. Resuming from `state` is exact, even mid-carry.
PauseRunResult pause_mode_run(const BinomialTable& table, std::span<const Bit> bits,
                              std::int64_t demand, PausableState state = {});

/// Long-running extractor over an unbounded stream.
///
/// The binomial table is grown on demand. Since exact rows cost O(n^2) bits
/// each, a stream is restarted from the apex after `segment_len` input bits;
/// each segment is an independent run of the protocol.
class SegmentedExtractor {
 public:
  explicit SegmentedExtractor(int segment_len = 1024);

  /// Feeds one bit; emitted bits are appended to `out`.
  void feed(Bit b, BitVec& out);

  [[nodiscard]] const ExtractorState& state() const { return state_; }
  [[nodiscard]] const TapeLedger& ledger() const { return ledger_; }
  [[nodiscard]] std::int64_t segments() const { return segments_; }
  [[nodiscard]] int segment_len() const { return segment_len_; }

 private:
  int segment_len_;
  BinomialTable table_;
  ExtractorState state_{};
  TapeLedger ledger_{};
  std::int64_t segments_ = 1;
};

}  // namespace selias
