#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pramlab/vkm/machine.hpp"

namespace pramlab::listrank {

enum class WyllieVariant { multi_kernel, single_block };

std::string_view to_string(WyllieVariant variant);
WyllieVariant parse_wyllie_variant(std::string_view text);

/// Successor field of a finished record.
inline constexpr std::uint32_t kNil = 0xFFFFFFFFu;

/// ceil(log2 n); zero for n <= 1.
std::uint32_t jump_steps(std::size_t n);

struct JumpPlan {
  std::uint32_t threads = 1;
  std::uint32_t block_size = 256;
  WyllieVariant variant = WyllieVariant::multi_kernel;
  std::string kernel_prefix = "wyllie";
};

/// Weighted pointer jumping over the list `succ` (tail self-looped).
///
/// Each node keeps one 64-bit record (val << 32) | nxt. On return the val
/// field of node i holds the sum of weights from i to the tail, minus one;
/// with unit weights that is the rank. `weight` may be null for unit
/// weights.
///
/// multi_kernel launches <prefix>_init and ceil(log2 n) <prefix>_jump kernels,
/// double-buffering the records in global memory. single_block runs the same
/// steps as one phased kernel with the own record held in registers, so each
/// step reads one record and writes one; it needs threads <= block_size.
vkm::DeviceArray<std::uint64_t> weighted_pointer_jump(vkm::Machine& machine,
                                                      const vkm::DeviceArray<std::uint32_t>& succ,
                                                      const vkm::DeviceArray<std::uint32_t>* weight,
                                                      const JumpPlan& plan);

}  // namespace pramlab::listrank
