#include "pramlab/listrank/pointer_jumping.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

#include "pramlab/core/types.hpp"

namespace pramlab::listrank {

using vkm::DeviceArray;
using vkm::GridConfig;
using vkm::ThreadCtx;

std::string_view to_string(WyllieVariant variant) {
  return variant == WyllieVariant::multi_kernel ? "multi_kernel" : "single_block";
}

WyllieVariant parse_wyllie_variant(std::string_view text) {
  if (text == "multi_kernel" || text == "multi") return WyllieVariant::multi_kernel;
  if (text == "single_block" || text == "single") return WyllieVariant::single_block;
  throw std::invalid_argument("unknown Wyllie variant '" + std::string(text) + "'");
}

std::uint32_t jump_steps(std::size_t n) {
  return n <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(n - 1));
}

namespace {

struct Record {
  std::uint32_t val, nxt;
};

inline Record split(std::uint64_t w) {
  return {static_cast<std::uint32_t>(w >> 32), static_cast<std::uint32_t>(w)};
}

inline std::uint64_t join(Record r) { return (std::uint64_t{r.val} << 32) | r.nxt; }

// Tail: nxt = NIL and its own weight minus one, so the tail is not counted
// as a link.
inline Record initial(ThreadCtx& ctx, const DeviceArray<std::uint32_t>& succ,
                      const DeviceArray<std::uint32_t>* weight, std::size_t i) {
  const std::uint32_t s = ctx.load(succ, i);
  const std::uint32_t w = weight ? ctx.load(*weight, i) : 1u;
  const std::uint32_t is_tail = s == i;
  return {w - is_tail, s | (0u - is_tail)};
}

// One jump, branch-free: finished records re-read themselves and add zero.
inline Record jump(ThreadCtx& ctx, const DeviceArray<std::uint64_t>& from, std::size_t i,
                   Record own) {
  const std::uint32_t has = own.nxt != kNil;
  const std::size_t j = has ? own.nxt : i;
  const Record next = split(ctx.load(from, j));
  return {own.val + has * next.val, has ? next.nxt : kNil};
}

}  // namespace

DeviceArray<std::uint64_t> weighted_pointer_jump(vkm::Machine& machine,
                                                 const DeviceArray<std::uint32_t>& succ,
                                                 const DeviceArray<std::uint32_t>* weight,
                                                 const JumpPlan& plan) {
  const std::size_t n = succ.size();
  if (weight && weight->size() != n) throw std::invalid_argument("weight array size mismatch");
  const std::uint32_t steps = jump_steps(n);
  const std::string& pre = plan.kernel_prefix;

  auto a = machine.alloc<std::uint64_t>(pre + ".rec_a", n);
  auto b = machine.alloc<std::uint64_t>(pre + ".rec_b", n);

  GridConfig grid;
  grid.threads = plan.threads;
  grid.block_size = plan.block_size;

  if (plan.variant == WyllieVariant::multi_kernel) {
    machine.launch(pre + "_init", grid, [&](ThreadCtx& ctx) {
      ctx.strided(n, [&](std::size_t i) { ctx.store(a, i, join(initial(ctx, succ, weight, i))); });
    });
    for (std::uint32_t s = 0; s < steps; ++s) {
      machine.launch(pre + "_jump", grid, [&](ThreadCtx& ctx) {
        ctx.strided(n, [&](std::size_t i) {
          const Record own = split(ctx.load(a, i));
          ctx.store(b, i, join(jump(ctx, a, i, own)));
        });
      });
      swap(a, b);
    }
    return a;
  }

  if (plan.threads > plan.block_size) {
    throw CapabilityError("single-block pointer jumping needs threads (" +
                          std::to_string(plan.threads) + ") <= block size (" +
                          std::to_string(plan.block_size) + ")");
  }
  std::vector<std::uint64_t> regs(n);
  const DeviceArray<std::uint64_t> buf[2] = {a, b};
  machine.launch_phased(pre + "_single_block", grid, static_cast<int>(steps) + 1,
                        [&](ThreadCtx& ctx, int phase) {
                          if (phase == 0) {
                            ctx.strided(n, [&](std::size_t i) {
                              regs[i] = join(initial(ctx, succ, weight, i));
                              ctx.store(buf[0], i, regs[i]);
                            });
                            return;
                          }
                          const auto& from = buf[(phase - 1) & 1];
                          const auto& to = buf[phase & 1];
                          ctx.strided(n, [&](std::size_t i) {
                            regs[i] = join(jump(ctx, from, i, split(regs[i])));
                            ctx.store(to, i, regs[i]);
                          });
                        });
  return buf[steps & 1];
}

}  // namespace pramlab::listrank
