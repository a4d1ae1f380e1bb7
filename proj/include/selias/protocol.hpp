#pragma once

#include <concepts>
#include <cstdint>
#include <type_traits>

#include "selias/bits.hpp"

namespace selias {

/// The extractor's entire memory: input bits read, weight, output bits emitted.
///
/// Three integers bounded by n, i.e. O(log n) stored bits. Nothing else about
/// the input history survives a step.
struct ExtractorState {
  std::int32_t n = 0;
  std::int32_t t = 0;
  std::int32_t l = 0;

  friend auto operator<=>(const ExtractorState&, const ExtractorState&) = default;
};

static_assert(sizeof(ExtractorState) == 3 * sizeof(std::int32_t));
static_assert(std::is_trivially_copyable_v<ExtractorState>);

/// A graded lattice whose node sizes obey size(n,t) = size(n-1,t) + size(n-1,t-1),
/// queried one binary digit at a time. Pascal's triangle and the two-row
/// Young lattice both model it.
template <class L>
concept SizeLattice = requires(const L& lat, int n, int t, int l) {
  { lat.bit(n, t, l) } -> std::convertible_to<bool>;
};

/// One input bit through the lattice walk, fully streaming.
///
/// Reads b, moves to (n+1, t+b). If the new node can be entered by a second
/// path of equal weight at the current level, b is random: emit it and rise
/// one level. Then keep fusing with the carry path while the two parents
/// disagree at the current level, emitting the parent-t bit each time.
/// Emissions go to `emit` in production order.
template <SizeLattice Lattice, class Emit>
ExtractorState protocol_advance(const Lattice& lat, ExtractorState s, Bit b, Emit&& emit) {
  s.n += 1;
  s.t += b;
  if (!lat.bit(s.n, s.t, s.l) || lat.bit(s.n - 1, s.t - 1 + b, s.l)) {
    emit(b);
    ++s.l;
    while (lat.bit(s.n - 1, s.t, s.l) != lat.bit(s.n - 1, s.t - 1, s.l)) {
      emit(static_cast<Bit>(lat.bit(s.n - 1, s.t, s.l)));
      ++s.l;
    }
  }
  return s;
}

/// Resumable form of protocol_advance that stops after every emitted bit.
///
/// `carry_pending` marks a machine paused between emissions of one input bit:
/// the next pull re-tests the carry condition before reading anything.
struct PausableState {
  ExtractorState node;
  bool carry_pending = false;

  friend auto operator<=>(const PausableState&, const PausableState&) = default;
};

enum class PullStatus { kEmitted, kInputExhausted };

struct PullResult {
  PullStatus status = PullStatus::kInputExhausted;
  Bit bit = 0;
  std::int64_t consumed = 0;  // input bits read during this pull
};

/// Produces exactly one output bit, reading input through `next` as needed.
/// `next` returns false once the input is exhausted.
template <SizeLattice Lattice, class NextBit>
PullResult protocol_pull(const Lattice& lat, PausableState& m, NextBit&& next) {
  PullResult r;
  for (;;) {
    ExtractorState& s = m.node;
    if (m.carry_pending) {
      const bool hi = lat.bit(s.n - 1, s.t, s.l);
      if (hi != lat.bit(s.n - 1, s.t - 1, s.l)) {
        ++s.l;
        r.status = PullStatus::kEmitted;
        r.bit = static_cast<Bit>(hi);
        return r;
      }
      m.carry_pending = false;
    }
    Bit b = 0;
    if (!next(b)) {
      r.status = PullStatus::kInputExhausted;
      return r;
    }
    ++r.consumed;
    s.n += 1;
    s.t += b;
    if (!lat.bit(s.n, s.t, s.l) || lat.bit(s.n - 1, s.t - 1 + b, s.l)) {
      ++s.l;
      m.carry_pending = true;
      r.status = PullStatus::kEmitted;
      r.bit = b;
      return r;
    }
  }
}

}  // namespace selias
