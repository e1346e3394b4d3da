#pragma once

#include <cstdint>
#include <vector>

#include "pramlab/core/exec_stats.hpp"
#include "pramlab/core/types.hpp"
#include "pramlab/vkm/machine.hpp"

namespace pramlab::concomp {

/// floor(log_{3/2} n) + 2, the round bound for n vertices.
std::uint32_t sv_round_bound(std::uint64_t n);

struct SvOptions {
  std::uint32_t p = 0;  // 0 = min(n, 864)
  std::uint32_t block_size = 256;
  bool track_roots = false;  // count roots after every round (host side, uncounted)
  vkm::MachineOptions machine;
};

struct CcResult {
  std::vector<VertexIndex> labels;  // canonical: smallest vertex of the component
  ExecStats stats;
  std::uint32_t rounds = 0;
  std::vector<std::uint32_t> roots_per_round;  // filled when track_roots
};

/// Arbitrary-CRCW connected components as the kernels SV0 .. SV5.
///
/// Each stored edge is evaluated in both orientations, so hooking kernels
/// run over 2m items. D is double-buffered for the two shortcut kernels;
/// D, Q and the flag w take concurrent writes.
class ShiloachVishkin {
 public:
  ShiloachVishkin(const EdgeGraph& graph, const SvOptions& options);

  void sv0_init();
  /// Starts round s + 1 and clears w.
  void begin_round();
  void sv1a_shortcut();
  void sv1b_mark();
  void sv2_hook();
  void sv3_stagnant_hook();
  void sv4_shortcut();
  /// True when no stamp of the current round exists, i.e. nothing changed.
  bool sv5_converged();

  std::uint32_t round() const { return s_; }
  std::uint32_t threads() const { return p_; }
  ParentForest forest() const;
  std::uint32_t root_count() const;
  const ExecStats& stats() const { return machine_.stats(); }
  vkm::Machine& machine() { return machine_; }

  /// Host-side overwrite of D and Q, for setting up hand-made states.
  void set_forest(const ParentForest& forest);

 private:
  vkm::GridConfig grid() const;

  std::uint32_t n_;
  std::uint64_t items_;  // oriented edges
  std::uint32_t p_;
  std::uint32_t block_size_;
  std::uint32_t s_ = 0;
  vkm::Machine machine_;
  vkm::DeviceArray<std::uint64_t> edges_;
  vkm::DeviceArray<std::uint32_t> d_, d_other_, q_, w_;
};

/// Runs SV0 once, then rounds of SV1a, SV1b, SV2, SV3, SV4, SV5 until SV5
/// reports no change.
CcResult sv_components(const EdgeGraph& graph, const SvOptions& options);

}  // namespace pramlab::concomp
