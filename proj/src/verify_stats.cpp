#include <algorithm>
#include <cmath>
#include <random>

#include <omp.h>

#include "selias/errors.hpp"
#include "selias/protocol.hpp"
#include "selias/streaming.hpp"
#include "selias/verify.hpp"

namespace selias::verify {

namespace {

constexpr std::int64_t kMinPositionCount = 100;

std::int64_t segment_count(std::int64_t samples, int segment_len) {
  return (samples + segment_len - 1) / segment_len;
}

int segment_length(std::int64_t samples, int segment_len, std::int64_t i) {
  return static_cast<int>(std::min<std::int64_t>(segment_len, samples - i * segment_len));
}

BitVec extract_segment(const BinomialTable& table, double p0, std::uint64_t seed, std::int64_t i, int len) {
  const BitVec in = segment_input(p0, seed, i, len);
  BitVec out;
  ExtractorState st = initial_state();
  for (Bit b : in) st = protocol_advance(table, st, b, [&](Bit x) { out.push_back(x); });
  return out;
}

StatReport summarize(double p0, std::int64_t samples, const std::vector<BitVec>& outputs) {
  StatReport rep;
  rep.samples = samples;
  rep.segments = static_cast<std::int64_t>(outputs.size());
  rep.source_entropy = binary_entropy(p0);

  double sum = 0.0;
  double lag = 0.0;
  int prev = 0;
  bool have_prev = false;
  std::vector<std::int64_t> pos_count;
  std::vector<std::int64_t> pos_ones;
  for (const BitVec& seg : outputs) {
    if (seg.size() > pos_count.size()) {
      pos_count.resize(seg.size(), 0);
      pos_ones.resize(seg.size(), 0);
    }
    for (std::size_t k = 0; k < seg.size(); ++k) {
      const int y = seg[k] ? 1 : -1;
      sum += y;
      if (have_prev) lag += prev * y;
      prev = y;
      have_prev = true;
      ++pos_count[k];
      pos_ones[k] += seg[k];
    }
    rep.output_bits += static_cast<std::int64_t>(seg.size());
  }
  rep.rate = samples > 0 ? static_cast<double>(rep.output_bits) / static_cast<double>(samples) : 0.0;
  if (rep.output_bits > 0) rep.monobit_z = sum / std::sqrt(static_cast<double>(rep.output_bits));
  if (rep.output_bits > 1) rep.serial_z = lag / std::sqrt(static_cast<double>(rep.output_bits - 1));
  for (std::size_t k = 0; k < pos_count.size(); ++k) {
    if (pos_count[k] < kMinPositionCount) continue;
    const double c = static_cast<double>(pos_count[k]);
    const double z = (2.0 * static_cast<double>(pos_ones[k]) - c) / std::sqrt(c);
    rep.max_position_z = std::max(rep.max_position_z, std::abs(z));
    ++rep.positions_tested;
  }
  return rep;
}

void check_args(double p0, std::int64_t samples, int segment_len) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("p0 must lie in [0,1]");
  if (samples < 0) throw DomainError("sample count must be nonnegative");
  if (segment_len < 1) throw DomainError("segment length must be positive");
}

}  // namespace

BitVec segment_input(double p0, std::uint64_t seed, std::int64_t segment, int length) {
  const auto idx = static_cast<std::uint64_t>(segment);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
  std::mt19937_64 rng(seq);
  BitVec bits(static_cast<std::size_t>(length));
  for (Bit& b : bits) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    b = u >= p0 ? 1 : 0;
  }
  return bits;
}

StatReport statistical_battery_ref(double p0, std::int64_t samples, std::uint64_t seed, int segment_len) {
  check_args(p0, samples, segment_len);
  const BinomialTable table = BinomialTable::build(segment_len, std::max(segment_len, BinomialTable::kDefaultCap));
  const std::int64_t segs = segment_count(samples, segment_len);
  std::vector<BitVec> outputs(static_cast<std::size_t>(segs));
  for (std::int64_t i = 0; i < segs; ++i) {
    outputs[i] = extract_segment(table, p0, seed, i, segment_length(samples, segment_len, i));
  }
  return summarize(p0, samples, outputs);
}

StatReport statistical_battery(double p0, std::int64_t samples, std::uint64_t seed, int segment_len) {
  check_args(p0, samples, segment_len);
  const BinomialTable table = BinomialTable::build(segment_len, std::max(segment_len, BinomialTable::kDefaultCap));
  const std::int64_t segs = segment_count(samples, segment_len);
  std::vector<BitVec> outputs(static_cast<std::size_t>(segs));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < segs; ++i) {
    outputs[i] = extract_segment(table, p0, seed, i, segment_length(samples, segment_len, i));
  }
  return summarize(p0, samples, outputs);
}

}  // namespace selias::verify
