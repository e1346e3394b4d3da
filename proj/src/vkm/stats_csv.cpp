#include "pramlab/vkm/stats_csv.hpp"

#include <ostream>

namespace pramlab::vkm {

void write_kernel_stats_header(std::ostream& out) {
  out << "run_id,kernel,launches,reads,writes,transactions,bytes,divergence,wall_ms\n";
}

void write_kernel_stats_rows(std::ostream& out, std::string_view run_id, const ExecStats& stats,
                             bool with_wall) {
  for (const auto& [name, c] : stats.per_kernel) {
    out << run_id << ',' << name << ',' << c.launches << ',' << c.reads << ',' << c.writes << ','
        << c.transactions << ',' << c.bytes_moved << ',' << c.divergence_events << ',';
    if (with_wall) out << c.wall_ms;
    out << '\n';
  }
}

}  // namespace pramlab::vkm
