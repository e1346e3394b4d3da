#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pramlab/bench/config.hpp"
#include "pramlab/core/exec_stats.hpp"
#include "pramlab/core/types.hpp"
#include "pramlab/listrank/random_splitter.hpp"

namespace pramlab::bench {

/// Benchmark CSV columns, in order.
const std::vector<std::string>& csv_columns();

/// One CSV row. Empty optionals become empty cells.
struct BenchRow {
  std::string run_id, algo, family, param;
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::uint32_t p = 0, blocks = 0;
  std::string backend, rep;  // rep is an index or "mean"
  std::uint64_t seed = 0;
  std::optional<double> wall_ms, wall_ms_stddev;
  double rounds = 0, kernel_launches = 0, barriers = 0, global_reads = 0, global_writes = 0,
         payload_bytes = 0;
  std::optional<double> transactions, bytes_moved, divergence_events, sm_span_transactions;
  std::optional<double> max_sublist, mean_sublist;
  std::string status;
};

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const BenchRow& row);

struct Instance {
  std::uint32_t n = 0;
  SuccessorList list;  // list-ranking algorithms
  EdgeGraph graph;     // components
};

/// Generates the input for size n from `seed`, or loads config.input.
Instance make_instance(const BenchConfig& config, std::uint32_t n, std::uint64_t seed);

struct RunOutcome {
  std::vector<std::uint32_t> result;  // ranks or canonical labels
  ExecStats stats;
  double wall_ms = 0.0;
  std::uint32_t rounds = 0;
  std::optional<listrank::SublistStats> sublists;
};

/// Runs the configured algorithm once.
RunOutcome run_once(const BenchConfig& config, const Instance& instance, const Geometry& geometry,
                    std::uint64_t seed);

/// Reference answer for the instance (sequential ranking or union-find labels).
std::vector<std::uint32_t> oracle(const BenchConfig& config, const Instance& instance);

/// Index of the first differing entry, or nullopt when equal.
std::optional<std::size_t> first_mismatch(const std::vector<std::uint32_t>& got,
                                          const std::vector<std::uint32_t>& want);

/// Runs the sweep: one row per (size, geometry, repetition) plus a mean row
/// per (size, geometry). Per-kernel stats and the components round profile
/// go to the optional streams.
std::vector<BenchRow> run_benchmark(const BenchConfig& config, std::ostream* kernel_stats = nullptr,
                                    std::ostream* round_profile = nullptr);

struct VerifyReport {
  bool passed = true;
  std::uint32_t runs = 0;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

/// Checks every run of the sweep against the oracle; reports the first
/// mismatching index per run.
VerifyReport verify(const BenchConfig& config);

}  // namespace pramlab::bench
