#pragma once

#include <iosfwd>
#include <string_view>

#include "pramlab/core/exec_stats.hpp"

namespace pramlab::vkm {

/// Header row of the per-kernel stats CSV.
void write_kernel_stats_header(std::ostream& out);

/// One row per kernel name in first-launch order. The wall column is left
/// empty unless `with_wall` (threaded runs).
void write_kernel_stats_rows(std::ostream& out, std::string_view run_id, const ExecStats& stats,
                             bool with_wall);

}  // namespace pramlab::vkm
