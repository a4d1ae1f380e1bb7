#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace selias {

/// A single classical bit, always 0 or 1.
using Bit = std::uint8_t;

/// Unpacked bit sequence, one element per bit.
using BitVec = std::vector<Bit>;

/// Parses a string of '0'/'1' characters. Throws DomainError on any other character.
BitVec bits_from_string(std::string_view text);

std::string bits_to_string(std::span<const Bit> bits);

/// Packed bytes -> bits, most significant bit of each byte first.
BitVec unpack_msb_first(std::span<const std::uint8_t> bytes);

struct PackedBits {
  std::vector<std::uint8_t> bytes;
  int pad_bits = 0;  // zero bits appended to fill the final byte
};

/// Bits -> packed bytes, MSB first. A trailing partial byte is zero-padded.
PackedBits pack_msb_first(std::span<const Bit> bits);

/// Fixed-capacity bit string used as a register label by the simulator.
/// Bit i is the i-th bit written (tape order); at most 64 bits.
struct TapeBits {
  std::uint64_t word = 0;
  std::uint8_t len = 0;

  static constexpr int kCapacity = 64;

  [[nodiscard]] Bit at(int i) const { return static_cast<Bit>((word >> i) & 1U); }
  void push(Bit b);
  /// Copy with bit i removed (later bits shift down).
  [[nodiscard]] TapeBits without(int i) const;
  [[nodiscard]] std::string str() const;

  friend auto operator<=>(const TapeBits&, const TapeBits&) = default;
};

}  // namespace selias
