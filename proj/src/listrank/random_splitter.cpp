#include "pramlab/listrank/random_splitter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pramlab/core/successor_list.hpp"
#include "pramlab/gen/kiss.hpp"
#include "pramlab/listrank/pointer_jumping.hpp"

namespace pramlab::listrank {

using vkm::ArrayMode;
using vkm::DeviceArray;
using vkm::GridConfig;
using vkm::ThreadCtx;

std::uint32_t default_splitter_count(std::uint32_t sm_count) { return 4 * sm_count * 8; }

std::vector<NodeIndex> select_random_splitters(std::uint32_t n, std::uint32_t p,
                                               std::uint64_t seed) {
  if (p == 0 || p > n) {
    throw std::invalid_argument("splitter count " + std::to_string(p) + " outside [1," +
                                std::to_string(n) + "]");
  }
  gen::Kiss rng(seed);
  std::vector<bool> taken(n, false);
  std::vector<NodeIndex> out;
  out.reserve(p);
  out.push_back(SuccessorList::head);
  taken[SuccessorList::head] = true;
  while (out.size() < p) {
    const auto node = static_cast<NodeIndex>(rng.below(n));
    if (taken[node]) continue;
    taken[node] = true;
    out.push_back(node);
  }
  return out;
}

std::vector<NodeIndex> select_even_splitters(const SuccessorList& list, std::uint32_t p) {
  const auto n = static_cast<std::uint32_t>(list.size());
  if (p == 0 || p > n || n % p != 0) {
    throw std::invalid_argument("even splitters need p dividing n (p=" + std::to_string(p) +
                                ", n=" + std::to_string(n) + ")");
  }
  const auto order = chain_order(list);
  std::vector<NodeIndex> out(p);
  for (std::uint32_t k = 0; k < p; ++k) out[k] = order[std::size_t{k} * (n / p)];
  return out;
}

SublistStats sublist_stats(const SplitterSet& s) {
  SublistStats out;
  std::uint64_t total = 0;
  for (std::uint32_t len : s.sublist_len) {
    out.max_len = std::max(out.max_len, len);
    ++out.histogram[len];
    total += len;
  }
  if (s.r > 0) out.mean_len = static_cast<double>(total) / s.r;
  return out;
}

RandomSplitterRanker::RandomSplitterRanker(const SuccessorList& list, const RsOptions& options)
    : n_(static_cast<std::uint32_t>(list.size())), options_(options), machine_(options.machine) {
  require_valid_list(list);
  p_ = options.p == 0 ? std::min(default_splitter_count(options.machine.sm_count), n_) : options.p;
  if (p_ == 0 || p_ > n_) {
    throw std::invalid_argument("thread count " + std::to_string(p_) + " outside [1," +
                                std::to_string(n_) + "]");
  }
  if (options.packing == Packing::P48 && p_ > kP48MaxThreads) {
    throw CapabilityError("48-bit packing supports at most " + std::to_string(kP48MaxThreads) +
                          " threads, got " + std::to_string(p_));
  }
  none_ = no_owner(options.packing);

  auto& st = machine_.stats();
  st.notes["packing"] = std::string(to_string(options.packing));
  st.notes["p"] = std::to_string(p_);
  if (static_cast<double>(p_) * std::log2(static_cast<double>(p_)) > n_) {
    st.set_flag("superlinear_work");
  }

  succ_ = machine_.alloc<std::uint32_t>("succ", n_);
  std::copy(list.succ.begin(), list.succ.end(), succ_.data());
  if (options.packing == Packing::P48) {
    mark16_ = machine_.alloc<std::uint16_t>("mark", n_);
    rank32_ = machine_.alloc<std::uint32_t>("rank", n_);
  } else {
    word_ = machine_.alloc<std::uint64_t>("mark_rank", n_);
  }
  splitter_node_ = machine_.alloc<std::uint32_t>("splitter_node", p_);
  sublist_len_ = machine_.alloc<std::uint32_t>("sublist_len", p_);
  splitter_succ_ = machine_.alloc<std::uint32_t>("splitter_succ", p_);
  out_ = options.in_place ? succ_ : machine_.alloc<std::uint32_t>("out_rank", n_);
}

GridConfig RandomSplitterRanker::grid() const {
  GridConfig g;
  g.threads = p_;
  g.block_size = std::min(options_.block_size, p_);
  return g;
}

void RandomSplitterRanker::rs1_init() {
  const std::size_t n = n_;
  if (options_.packing == Packing::P48) {
    const auto none = static_cast<std::uint16_t>(none_);
    machine_.launch("rs1_init", grid(), [&](ThreadCtx& ctx) {
      ctx.strided(n, [&](std::size_t i) { ctx.store(mark16_, i, none); });
    });
  } else {
    const std::uint64_t none = pack_unchecked(none_, 0);
    machine_.launch("rs1_init", grid(), [&](ThreadCtx& ctx) {
      ctx.strided(n, [&](std::size_t i) { ctx.store(word_, i, none); });
    });
  }
}

void RandomSplitterRanker::rs2_select(std::span<const NodeIndex> splitters) {
  if (splitters.size() != p_) {
    throw std::invalid_argument("expected " + std::to_string(p_) + " splitters, got " +
                                std::to_string(splitters.size()));
  }
  if (splitters[0] != SuccessorList::head) {
    throw std::invalid_argument("splitter 0 must be the head node");
  }
  std::vector<bool> seen(n_, false);
  for (NodeIndex s : splitters) {
    if (s >= n_ || seen[s]) throw std::invalid_argument("splitters must be distinct nodes");
    seen[s] = true;
  }
  std::copy(splitters.begin(), splitters.end(), splitter_node_.data());

  if (options_.packing == Packing::P48) {
    machine_.launch("rs2_select", grid(), [&](ThreadCtx& ctx) {
      const std::uint32_t i = ctx.thread();
      const std::uint32_t node = ctx.load(splitter_node_, i);
      ctx.store(mark16_, node, static_cast<std::uint16_t>(i));
      ctx.store(rank32_, node, 0u);
    });
  } else {
    machine_.launch("rs2_select", grid(), [&](ThreadCtx& ctx) {
      const std::uint32_t i = ctx.thread();
      const std::uint32_t node = ctx.load(splitter_node_, i);
      ctx.store(word_, node, pack_unchecked(i, 0));
    });
  }
}

void RandomSplitterRanker::rs3_walk() {
  const bool p48 = options_.packing == Packing::P48;
  const std::uint32_t none = none_;
  machine_.launch("rs3_walk", grid(), [&](ThreadCtx& ctx) {
    const std::uint32_t i = ctx.thread();
    std::uint32_t cur = ctx.load(splitter_node_, i);
    std::uint32_t local = 0;
    std::uint32_t nxt, owner;
    for (;;) {
      ctx.step();
      if (p48) {
        ctx.store(mark16_, cur, static_cast<std::uint16_t>(i));
        ctx.store(rank32_, cur, local);
      } else {
        ctx.store(word_, cur, pack_unchecked(i, local));
      }
      nxt = ctx.load(succ_, cur);
      owner = p48 ? ctx.load(mark16_, nxt) : word_mark(ctx.load(word_, nxt));
      if (!ctx.branch((nxt != cur) & (owner == none))) break;
      cur = nxt;
      ++local;
    }
    ctx.store(sublist_len_, i, local + 1);
    ctx.store(splitter_succ_, i, nxt == cur ? i : owner);
  });

  for (std::uint32_t v = 0; v < n_; ++v) {
    const std::uint32_t owner = p48 ? mark16_[v] : word_mark(word_[v]);
    if (owner == none_) {
      throw Error("node " + std::to_string(v) + " has no owner after the sub-list walk");
    }
  }
}

void RandomSplitterRanker::rs4_rank_splitters() {
  // The reduced list is short enough for the one-block variant; its threads
  // stride when r exceeds the block.
  JumpPlan plan;
  plan.threads = std::min(p_, GridConfig::max_block_size);
  plan.block_size = plan.threads;
  plan.variant = WyllieVariant::single_block;
  plan.kernel_prefix = "rs4";
  splitter_rec_ = weighted_pointer_jump(machine_, splitter_succ_, &sublist_len_, plan);
}

void RandomSplitterRanker::rs5_expand() {
  if (!splitter_rec_) throw std::logic_error("rs5_expand needs rs4_rank_splitters first");
  const auto& rec = *splitter_rec_;
  const bool p48 = options_.packing == Packing::P48;
  const std::size_t n = n_;
  const std::uint32_t r = p_;
  // Block-shared copy of the splitter ranks; every block stages the same
  // values, so one host buffer stands in for all of them.
  std::vector<std::uint32_t> staged(r);
  machine_.launch_phased("rs5_expand", grid(), 2, [&](ThreadCtx& ctx, int phase) {
    if (phase == 0) {
      for (std::uint32_t j = ctx.thread_in_block(); j < r; j += ctx.block_size()) {
        ctx.step();
        const auto rank = static_cast<std::uint32_t>(ctx.load(rec, j) >> 32);
        std::atomic_ref<std::uint32_t>(staged[j]).store(rank, std::memory_order_relaxed);
      }
      return;
    }
    ctx.strided(n, [&](std::size_t i) {
      std::uint32_t owner, local;
      if (p48) {
        owner = ctx.load(mark16_, i);
        local = ctx.load(rank32_, i);
      } else {
        const std::uint64_t w = ctx.load(word_, i);
        owner = word_mark(w);
        local = word_rank(w);
      }
      ctx.store(out_, i, staged[owner] - local);
    });
  });
}

RankArray RandomSplitterRanker::ranks() const {
  return RankArray(out_.data(), out_.data() + n_);
}

SplitterSet RandomSplitterRanker::splitters() const {
  SplitterSet s;
  s.r = p_;
  s.splitter_node.assign(splitter_node_.data(), splitter_node_.data() + p_);
  s.sublist_len.assign(sublist_len_.data(), sublist_len_.data() + p_);
  s.splitter_succ.assign(splitter_succ_.data(), splitter_succ_.data() + p_);
  if (splitter_rec_) {
    s.splitter_rank.resize(p_);
    for (std::uint32_t i = 0; i < p_; ++i) {
      s.splitter_rank[i] = static_cast<std::uint32_t>((*splitter_rec_)[i] >> 32);
    }
  }
  return s;
}

OwnerMarks RandomSplitterRanker::marks() const {
  OwnerMarks m;
  m.owner.resize(n_);
  m.local_rank.resize(n_);
  for (std::uint32_t v = 0; v < n_; ++v) {
    if (options_.packing == Packing::P48) {
      m.owner[v] = mark16_[v];
      m.local_rank[v] = rank32_[v];
    } else {
      m.owner[v] = word_mark(word_[v]);
      m.local_rank[v] = word_rank(word_[v]);
    }
  }
  return m;
}

namespace {

RsResult run_all(const SuccessorList& list, const RsOptions& options, bool even) {
  RandomSplitterRanker rk(list, options);
  const auto splitters =
      even ? select_even_splitters(list, rk.threads())
           : select_random_splitters(static_cast<std::uint32_t>(list.size()), rk.threads(),
                                     options.seed);
  rk.rs1_init();
  rk.rs2_select(splitters);
  rk.rs3_walk();
  rk.rs4_rank_splitters();
  rk.rs5_expand();
  RsResult out;
  out.rank = rk.ranks();
  out.splitters = rk.splitters();
  out.stats = rk.stats();
  out.stats.notes["splitters"] = even ? "even" : "random";
  return out;
}

}  // namespace

RsResult rs_rank(const SuccessorList& list, const RsOptions& options) {
  return run_all(list, options, false);
}

RsResult rs_rank_even(const SuccessorList& list, const RsOptions& options) {
  return run_all(list, options, true);
}

}  // namespace pramlab::listrank
