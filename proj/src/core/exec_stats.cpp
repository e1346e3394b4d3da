#include "pramlab/core/exec_stats.hpp"

namespace pramlab {

AccessCounters& AccessCounters::operator+=(const AccessCounters& o) {
  reads += o.reads;
  writes += o.writes;
  payload_bytes += o.payload_bytes;
  transactions += o.transactions;
  bytes_moved += o.bytes_moved;
  arbitrary_attempts += o.arbitrary_attempts;
  return *this;
}

KernelCounters& KernelCounters::operator+=(const KernelCounters& o) {
  launches += o.launches;
  reads += o.reads;
  writes += o.writes;
  payload_bytes += o.payload_bytes;
  transactions += o.transactions;
  bytes_moved += o.bytes_moved;
  divergence_events += o.divergence_events;
  arbitrary_attempts += o.arbitrary_attempts;
  sm_span_transactions += o.sm_span_transactions;
  wall_ms += o.wall_ms;
  for (const auto& [name, c] : o.per_array) per_array[name] += c;
  return *this;
}

void ExecStats::record_launch(std::string_view kernel_name, std::uint32_t round,
                              const KernelCounters& c) {
  if (kernel_launches > 0) ++barriers;
  kernel_launches += c.launches;
  total += c;
  bool found = false;
  for (auto& [name, k] : per_kernel) {
    if (name == kernel_name) {
      k += c;
      found = true;
      break;
    }
  }
  if (!found) per_kernel.emplace_back(std::string(kernel_name), c);
  launches.push_back(LaunchRecord{std::string(kernel_name), round, c});
}

const KernelCounters* ExecStats::kernel(std::string_view name) const {
  for (const auto& [k, c] : per_kernel) {
    if (k == name) return &c;
  }
  return nullptr;
}

bool ExecStats::flag(std::string_view key) const {
  auto it = notes.find(std::string(key));
  return it != notes.end() && it->second == "1";
}

}  // namespace pramlab
