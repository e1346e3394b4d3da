#include "pramlab/core/packed_node.hpp"

#include <string>

namespace pramlab {

std::string_view to_string(Packing packing) {
  return packing == Packing::P48 ? "P48" : "P64";
}

std::uint64_t pack(std::uint64_t mark, std::uint64_t rank, Packing packing) {
  const std::uint64_t mark_limit = std::uint64_t{1} << mark_bits(packing);
  if (mark >= mark_limit) {
    throw PackOverflow("mark " + std::to_string(mark) + " does not fit in " +
                       std::to_string(mark_bits(packing)) + " bits (" +
                       std::string(to_string(packing)) + ")");
  }
  if (rank > 0xFFFFFFFFull) {
    throw PackOverflow("rank " + std::to_string(rank) + " does not fit in 32 bits");
  }
  return pack_unchecked(static_cast<std::uint32_t>(mark), static_cast<std::uint32_t>(rank));
}

PackedNode unpack(std::uint64_t word, Packing packing) {
  PackedNode node{word_mark(word), word_rank(word)};
  if (packing == Packing::P48 && node.mark > 0xFFFFu) {
    throw PackOverflow("word carries a mark wider than 16 bits");
  }
  return node;
}

}  // namespace pramlab
