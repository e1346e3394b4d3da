#pragma once

#include <cstdint>
#include <span>

namespace pramlab::vkm {

enum class AccessKind : std::uint8_t { read, write };

struct MemoryAccess {
  std::uint32_t thread = 0;
  std::uint64_t address = 0;  // byte offset within one array
  std::uint8_t size = 4;      // 1, 2, 4 or 8 bytes
  AccessKind kind = AccessKind::read;
};

/// Segment geometry for one access width (compute capability 1.2 rules).
struct SegmentRule {
  std::uint32_t min_transaction;
  std::uint32_t segment;
};

/// Throws std::invalid_argument for widths other than 1, 2, 4, 8.
SegmentRule segment_rule(std::uint32_t access_size);

struct TransactionCount {
  std::uint64_t transactions = 0;
  std::uint64_t bytes = 0;

  friend bool operator==(const TransactionCount&, const TransactionCount&) = default;
};

/// Coalesces the accesses one half-warp issues for a single instruction.
///
/// One transaction is issued per aligned segment touched. A transaction is
/// shrunk to the minimum transaction size when everything it covers lies in a
/// single aligned window of that size, otherwise it moves the whole segment.
/// All accesses must share kind and width; at most 16 are accepted.
TransactionCount count_transactions(std::span<const MemoryAccess> accesses);

/// Same rule over raw byte addresses of one width; no validation beyond the
/// width. Used on the simulator's hot path.
TransactionCount count_transactions(std::span<const std::uint64_t> addresses,
                                    std::uint32_t access_size);

}  // namespace pramlab::vkm
