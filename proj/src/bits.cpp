#include "selias/bits.hpp"

#include "selias/errors.hpp"

namespace selias {

BitVec bits_from_string(std::string_view text) {
  BitVec out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DomainError("bit string may only contain '0' and '1'");
    }
    out.push_back(static_cast<Bit>(c - '0'));
  }
  return out;
}

std::string bits_to_string(std::span<const Bit> bits) {
  std::string s;
  s.reserve(bits.size());
  for (Bit b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitVec unpack_msb_first(std::span<const std::uint8_t> bytes) {
  BitVec out;
  out.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes) {
    for (int k = 7; k >= 0; --k) out.push_back(static_cast<Bit>((byte >> k) & 1U));
  }
  return out;
}

PackedBits pack_msb_first(std::span<const Bit> bits) {
  PackedBits packed;
  packed.bytes.assign((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) packed.bytes[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  packed.pad_bits = static_cast<int>(packed.bytes.size() * 8 - bits.size());
  return packed;
}

void TapeBits::push(Bit b) {
  if (len >= kCapacity) throw ResourceLimitError("tape register holds at most 64 bits");
  word |= static_cast<std::uint64_t>(b & 1U) << len;
  ++len;
}

TapeBits TapeBits::without(int i) const {
  const std::uint64_t low = i == 0 ? 0 : (word & ((std::uint64_t{1} << i) - 1));
  const std::uint64_t high = i + 1 >= 64 ? 0 : (word >> (i + 1)) << i;
  return TapeBits{low | high, static_cast<std::uint8_t>(len - 1)};
}

std::string TapeBits::str() const {
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back(at(i) ? '1' : '0');
  return s;
}

}  // namespace selias
