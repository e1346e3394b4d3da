#include "pramlab/listrank/wyllie.hpp"

#include <algorithm>
#include <stdexcept>

#include "pramlab/core/successor_list.hpp"

namespace pramlab::listrank {

ListRankResult wyllie_rank(const SuccessorList& list, const WyllieOptions& options) {
  require_valid_list(list);
  if (options.p == 0) throw std::invalid_argument("thread count must be positive");

  JumpPlan plan;
  plan.threads = options.p;
  plan.variant = options.variant;
  plan.kernel_prefix = "wyllie";
  plan.block_size = options.block_size;
  if (plan.block_size == 0) {
    plan.block_size = options.variant == WyllieVariant::single_block
                          ? std::min(options.p, vkm::GridConfig::max_block_size)
                          : std::min<std::uint32_t>(256, options.p);
  }

  vkm::Machine machine(options.machine);
  auto succ = machine.alloc<std::uint32_t>("succ", list.size());
  std::copy(list.succ.begin(), list.succ.end(), succ.data());
  const auto rec = weighted_pointer_jump(machine, succ, nullptr, plan);

  ListRankResult out;
  out.rank.resize(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) out.rank[i] = static_cast<std::uint32_t>(rec[i] >> 32);
  out.stats = machine.stats();
  out.stats.notes["variant"] = std::string(to_string(options.variant));
  return out;
}

}  // namespace pramlab::listrank
