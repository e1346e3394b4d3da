#pragma once

#include <cstdint>

#include "pramlab/core/types.hpp"
#include "pramlab/listrank/pointer_jumping.hpp"
#include "pramlab/listrank/result.hpp"
#include "pramlab/vkm/machine.hpp"

namespace pramlab::listrank {

struct WyllieOptions {
  std::uint32_t p = 256;
  WyllieVariant variant = WyllieVariant::multi_kernel;
  // 0 picks 256 for multi_kernel and p for single_block.
  std::uint32_t block_size = 0;
  vkm::MachineOptions machine;
};

/// Wyllie's pointer-jumping list ranking on the virtual machine.
/// Throws InvalidList for bad input and CapabilityError when single_block is
/// asked for more threads than one block holds.
ListRankResult wyllie_rank(const SuccessorList& list, const WyllieOptions& options);

}  // namespace pramlab::listrank
