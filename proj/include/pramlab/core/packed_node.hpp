#pragma once

#include <cstdint>
#include <string_view>

#include "pramlab/core/types.hpp"

namespace pramlab {

/// Owner-mark/rank record layout. P48 keeps a 16-bit mark array next to a
/// 32-bit rank array; P64 packs both halves into one 8-byte word.
enum class Packing { P48, P64 };

std::string_view to_string(Packing packing);

struct PackedNode {
  std::uint32_t mark = 0;
  std::uint32_t rank = 0;

  friend bool operator==(const PackedNode&, const PackedNode&) = default;
};

class PackOverflow : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint32_t mark_bits(Packing packing) {
  return packing == Packing::P48 ? 16u : 32u;
}

/// "No owner yet" sentinel for the given mark width.
inline constexpr std::uint32_t no_owner(Packing packing) {
  return packing == Packing::P48 ? 0xFFFFu : 0xFFFFFFFFu;
}

/// Word layout is (mark << 32) | rank for both packings; under P48 the mark
/// must fit in 16 bits.
std::uint64_t pack(std::uint64_t mark, std::uint64_t rank, Packing packing);

PackedNode unpack(std::uint64_t word, Packing packing);

inline constexpr std::uint64_t pack_unchecked(std::uint32_t mark, std::uint32_t rank) {
  return (static_cast<std::uint64_t>(mark) << 32) | rank;
}
inline constexpr std::uint32_t word_mark(std::uint64_t word) {
  return static_cast<std::uint32_t>(word >> 32);
}
inline constexpr std::uint32_t word_rank(std::uint64_t word) {
  return static_cast<std::uint32_t>(word);
}

}  // namespace pramlab
