#include "selias/streaming.hpp"

#include <algorithm>
#include <stdexcept>

#include "selias/errors.hpp"

namespace selias {

void TapeLedger::record_step(int emitted) {
  if (emitted == 0) {
    ++purity_len;
    return;
  }
  ++out_len;
  const int pops = emitted - 1;
  if (pops > purity_len) throw std::logic_error("purity tape underflow");
  purity_len -= pops;
  out_len += pops;
}

ExtractorState initial_state() { return ExtractorState{0, 0, 0}; }

StepResult step(const BinomialTable& table, ExtractorState state, Bit b) {
  StepResult r;
  r.state = protocol_advance(table, state, b, [&](Bit x) { r.emitted.push_back(x); });
  return r;
}

RunResult run(const BinomialTable& table, std::span<const Bit> bits) {
  RunResult r;
  r.final_state = initial_state();
  for (Bit b : bits) {
    const auto before = r.output.size();
    r.final_state = protocol_advance(table, r.final_state, b, [&](Bit x) { r.output.push_back(x); });
    r.ledger.record_step(static_cast<int>(r.output.size() - before));
  }
  return r;
}

RunResult run(std::span<const Bit> bits) {
  return run(BinomialTable::build(static_cast<int>(bits.size())), bits);
}

BitVec von_neumann(std::span<const Bit> bits) {
  BitVec out;
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
    if (bits[i] != bits[i + 1]) out.push_back(bits[i + 1]);
  }
  return out;
}

PauseRunResult pause_mode_run(const BinomialTable& table, std::span<const Bit> bits,
                              std::int64_t demand, PausableState state) {
  if (demand < 0) throw DomainError("demand must be nonnegative");
  PauseRunResult r;
  r.state = state;
  std::size_t pos = 0;
  auto next = [&](Bit& b) {
    if (pos >= bits.size()) return false;
    b = bits[pos++];
    return true;
  };
  while (static_cast<std::int64_t>(r.output.size()) < demand) {
    const PullResult pulled = protocol_pull(table, r.state, next);
    r.consumed += pulled.consumed;
    if (pulled.status == PullStatus::kInputExhausted) {
      r.input_exhausted = true;
      break;
    }
    r.output.push_back(pulled.bit);
  }
  return r;
}

SegmentedExtractor::SegmentedExtractor(int segment_len)
    : segment_len_(segment_len), table_(BinomialTable::build(std::min(segment_len, 64))) {
  if (segment_len < 1) throw DomainError("segment length must be positive");
}

void SegmentedExtractor::feed(Bit b, BitVec& out) {
  if (state_.n == segment_len_) {
    state_ = initial_state();
    ++segments_;
  }
  if (state_.n + 1 > table_.max_n()) {
    table_ = table_.extended(std::min(segment_len_, 2 * table_.max_n()),
                             std::max(segment_len_, BinomialTable::kDefaultCap));
  }
  const auto before = out.size();
  state_ = protocol_advance(table_, state_, b, [&](Bit x) { out.push_back(x); });
  ledger_.record_step(static_cast<int>(out.size() - before));
}

}  // namespace selias
