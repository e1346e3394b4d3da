#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pramlab/core/packed_node.hpp"
#include "pramlab/core/types.hpp"
#include "pramlab/listrank/result.hpp"
#include "pramlab/vkm/machine.hpp"

namespace pramlab::listrank {

/// Largest thread count the 16-bit mark layout accepts.
inline constexpr std::uint32_t kP48MaxThreads = 16384;

/// 4 x (sm_count x 8).
std::uint32_t default_splitter_count(std::uint32_t sm_count = 27);

struct RsOptions {
  std::uint32_t p = 0;  // 0 = default_splitter_count(), clamped to n
  Packing packing = Packing::P64;
  std::uint32_t block_size = 256;
  std::uint64_t seed = 1;
  bool in_place = false;  // write final ranks over the successor array
  vkm::MachineOptions machine;
};

struct SplitterSet {
  std::uint32_t r = 0;
  std::vector<NodeIndex> splitter_node;
  std::vector<std::uint32_t> sublist_len;
  std::vector<std::uint32_t> splitter_succ;
  std::vector<std::uint32_t> splitter_rank;
};

struct OwnerMarks {
  std::vector<std::uint32_t> owner;
  std::vector<std::uint32_t> local_rank;
};

struct SublistStats {
  std::uint32_t max_len = 0;
  double mean_len = 0.0;
  std::map<std::uint32_t, std::uint64_t> histogram;  // length -> sub-list count
};

struct RsResult : ListRankResult {
  SplitterSet splitters;
};

/// p distinct nodes drawn by rejection sampling over KISS draws; entry 0 is
/// always the head.
std::vector<NodeIndex> select_random_splitters(std::uint32_t n, std::uint32_t p,
                                               std::uint64_t seed);

/// Nodes at chain positions 0, n/p, 2n/p, ...; requires p | n.
std::vector<NodeIndex> select_even_splitters(const SuccessorList& list, std::uint32_t p);

SublistStats sublist_stats(const SplitterSet& splitters);

/// Random-splitter list ranking as five kernels on one machine. The steps
/// can be driven one at a time for inspection; rs_rank runs them all.
class RandomSplitterRanker {
 public:
  RandomSplitterRanker(const SuccessorList& list, const RsOptions& options);

  /// RS1: every node loses its owner.
  void rs1_init();
  /// RS2: splitter i claims node splitters[i]; splitters[0] must be the head.
  void rs2_select(std::span<const NodeIndex> splitters);
  /// RS3: each splitter walks its sub-list, recording owner and local rank.
  void rs3_walk();
  /// RS4: weighted pointer jumping over the reduced list of splitters.
  void rs4_rank_splitters();
  /// RS5: rank = splitter rank of the owner minus local rank.
  void rs5_expand();

  std::uint32_t threads() const { return p_; }
  RankArray ranks() const;
  SplitterSet splitters() const;
  OwnerMarks marks() const;
  const ExecStats& stats() const { return machine_.stats(); }
  vkm::Machine& machine() { return machine_; }

 private:
  vkm::GridConfig grid() const;

  std::uint32_t n_;
  RsOptions options_;
  std::uint32_t p_;
  std::uint32_t none_;
  vkm::Machine machine_;
  vkm::DeviceArray<std::uint32_t> succ_;
  vkm::DeviceArray<std::uint16_t> mark16_;
  vkm::DeviceArray<std::uint32_t> rank32_;
  vkm::DeviceArray<std::uint64_t> word_;
  vkm::DeviceArray<std::uint32_t> splitter_node_;
  vkm::DeviceArray<std::uint32_t> sublist_len_;
  vkm::DeviceArray<std::uint32_t> splitter_succ_;
  std::optional<vkm::DeviceArray<std::uint64_t>> splitter_rec_;
  vkm::DeviceArray<std::uint32_t> out_;
};

/// Random splitters chosen from options.seed.
RsResult rs_rank(const SuccessorList& list, const RsOptions& options);

/// Evenly spaced splitters (one uncounted host pre-walk to place them).
RsResult rs_rank_even(const SuccessorList& list, const RsOptions& options);

}  // namespace pramlab::listrank
