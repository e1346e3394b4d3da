#pragma once

#include <iosfwd>

namespace pramlab::bench {

/// Derives plotting columns from a benchmark CSV: time per element and
/// speedup relative to the blocks == 1 run of the same series. Uses the
/// mean rows when present. Speedup is wall-time based for threaded rows
/// and busiest-SM transaction load based for simulated rows.
///
/// Throws ConfigError when a series has no single-block baseline or the
/// input lacks required columns.
void emit_plot_data(std::istream& bench_csv, std::ostream& out);

}  // namespace pramlab::bench
