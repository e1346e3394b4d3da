#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pramlab/core/exec_stats.hpp"

namespace pramlab::concomp {

struct RoundProfileRow {
  std::uint32_t round = 0;  // 0 holds SV0
  std::string kernel;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t transactions = 0;
};

struct RoundProfile {
  std::vector<RoundProfileRow> rows;
  std::uint64_t hook_reads = 0;   // SV2 + SV3
  std::uint64_t other_reads = 0;  // every other kernel
  bool hooks_dominate = false;    // hook_reads > other_reads
};

/// Rounds x kernels table built from the launch log of a components run.
RoundProfile round_profile(const ExecStats& stats);

void write_round_profile_csv(std::ostream& out, const RoundProfile& profile);

}  // namespace pramlab::concomp
