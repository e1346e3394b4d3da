#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pramlab {

/// Traffic against one device array within one kernel.
struct AccessCounters {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t payload_bytes = 0;  // sum of access sizes actually requested
  std::uint64_t transactions = 0;   // simulated backend only
  std::uint64_t bytes_moved = 0;    // transaction bytes, simulated backend only
  std::uint64_t arbitrary_attempts = 0;

  AccessCounters& operator+=(const AccessCounters& o);
  friend bool operator==(const AccessCounters&, const AccessCounters&) = default;
};

/// Counters for one kernel (or the sum over repeated launches of it).
///
/// `writes` counts plain stores plus one write per concurrent-write cell that
/// committed a value; the losing attempts only show up in `arbitrary_attempts`.
struct KernelCounters {
  std::uint64_t launches = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t payload_bytes = 0;
  std::uint64_t transactions = 0;
  std::uint64_t bytes_moved = 0;
  std::uint64_t divergence_events = 0;
  std::uint64_t arbitrary_attempts = 0;
  std::uint64_t sm_span_transactions = 0;  // busiest-SM transaction load
  double wall_ms = 0.0;                    // threaded backend only
  std::map<std::string, AccessCounters> per_array;

  KernelCounters& operator+=(const KernelCounters& o);
};

struct LaunchRecord {
  std::string kernel;
  std::uint32_t round = 0;  // 0 = outside any round
  KernelCounters counters;
};

struct ExecStats {
  std::uint64_t kernel_launches = 0;
  std::uint64_t barriers = 0;     // grid-wide, one between consecutive kernels
  std::uint64_t block_syncs = 0;  // intra-block syncs inside phased kernels
  std::uint64_t rounds = 0;
  KernelCounters total;
  std::vector<std::pair<std::string, KernelCounters>> per_kernel;  // first-launch order
  std::vector<LaunchRecord> launches;
  std::map<std::string, std::string> notes;

  void record_launch(std::string_view kernel, std::uint32_t round, const KernelCounters& c);

  /// Nullptr if the kernel never ran.
  const KernelCounters* kernel(std::string_view name) const;

  bool flag(std::string_view key) const;
  void set_flag(std::string_view key) { notes[std::string(key)] = "1"; }
};

}  // namespace pramlab
