#include "pramlab/vkm/coalescing.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace pramlab::vkm {

SegmentRule segment_rule(std::uint32_t access_size) {
  switch (access_size) {
    case 1: return {16, 32};
    case 2: return {32, 64};
    case 4: return {64, 128};
    case 8: return {64, 128};
    default:
      throw std::invalid_argument("unsupported access width " + std::to_string(access_size));
  }
}

TransactionCount count_transactions(std::span<const std::uint64_t> addresses,
                                    std::uint32_t access_size) {
  const SegmentRule rule = segment_rule(access_size);
  struct Span {
    std::uint64_t segment, lo, hi;
  };
  std::array<Span, 32> spans;
  std::size_t used = 0;
  for (std::uint64_t a : addresses) {
    const std::uint64_t seg = a / rule.segment;
    const std::uint64_t last = a + access_size - 1;
    std::size_t k = 0;
    while (k < used && spans[k].segment != seg) ++k;
    if (k == used) {
      if (used == spans.size()) throw std::invalid_argument("too many accesses in one group");
      spans[used++] = {seg, a, last};
    } else {
      spans[k].lo = std::min(spans[k].lo, a);
      spans[k].hi = std::max(spans[k].hi, last);
    }
  }
  TransactionCount out;
  out.transactions = used;
  for (std::size_t k = 0; k < used; ++k) {
    const bool small = spans[k].lo / rule.min_transaction == spans[k].hi / rule.min_transaction;
    out.bytes += small ? rule.min_transaction : rule.segment;
  }
  return out;
}

TransactionCount count_transactions(std::span<const MemoryAccess> accesses) {
  if (accesses.size() > 16) {
    throw std::invalid_argument("a half-warp issues at most 16 accesses, got " +
                                std::to_string(accesses.size()));
  }
  if (accesses.empty()) return {};
  std::array<std::uint64_t, 16> addresses{};
  const auto& first = accesses.front();
  segment_rule(first.size);
  for (std::size_t i = 0; i < accesses.size(); ++i) {
    if (accesses[i].size != first.size || accesses[i].kind != first.kind) {
      throw std::invalid_argument("accesses in one group must share width and kind");
    }
    if (accesses[i].address % accesses[i].size != 0) {
      throw std::invalid_argument("misaligned access at byte " +
                                  std::to_string(accesses[i].address));
    }
    addresses[i] = accesses[i].address;
  }
  return count_transactions(std::span(addresses.data(), accesses.size()), first.size);
}

}  // namespace pramlab::vkm
