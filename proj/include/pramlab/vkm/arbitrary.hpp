#pragma once

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace pramlab::vkm {

/// Priority of one concurrent write. The pending write with the smallest key
/// wins; ties fall back to the smaller value. The key depends only on the
/// seed, the cell and the value, never on the order writes arrived in.
std::uint32_t arbitrary_key(std::uint64_t seed, std::uint64_t array, std::uint64_t index,
                            std::uint64_t epoch, std::uint64_t value);

/// A memory cell under arbitrary-CRCW semantics: concurrent writes collect in
/// `pending` and exactly one of them survives the commit.
template <class T>
struct ArbitraryCell {
  static_assert(std::is_unsigned_v<T>);

  T value{};
  std::vector<T> pending;

  void write(T v) { pending.push_back(v); }
};

/// Commits `cell` and returns its new value. An empty pending set leaves the
/// value unchanged.
template <class T>
T arbitrary_commit(ArbitraryCell<T>& cell, std::uint64_t seed, std::uint64_t cell_id = 0) {
  if (!cell.pending.empty()) {
    auto rank = [&](T v) {
      return std::pair{arbitrary_key(seed, 0, cell_id, 0, static_cast<std::uint64_t>(v)), v};
    };
    cell.value = *std::min_element(cell.pending.begin(), cell.pending.end(),
                                   [&](T a, T b) { return rank(a) < rank(b); });
    cell.pending.clear();
  }
  return cell.value;
}

}  // namespace pramlab::vkm
