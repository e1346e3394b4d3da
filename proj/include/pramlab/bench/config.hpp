#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pramlab/core/types.hpp"
#include "pramlab/vkm/grid.hpp"

namespace pramlab::bench {

enum class Algorithm { seq_lr, wyllie, wyllie_single, rs48, rs64, rs_even, seq_cc, sv };
enum class Family { list, tree, random };

std::string_view to_string(Algorithm a);
std::string_view to_string(Family f);
Algorithm parse_algorithm(std::string_view text);
Family parse_family(std::string_view text);

/// List-ranking algorithms take lists; components take graphs.
bool is_list_ranking(Algorithm a);
bool uses_machine(Algorithm a);

/// Invalid or incompatible settings, raised before anything runs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct BenchConfig {
  Algorithm algorithm = Algorithm::rs64;
  Family family = Family::list;
  std::uint32_t k = 2;         // tree degree
  double density = 0.01;       // random graphs
  std::vector<std::uint32_t> sizes;
  std::uint32_t threads = 0;   // 0 = algorithm default; ignored when blocks are given
  std::vector<std::uint32_t> blocks;  // each entry runs with threads = blocks x block_size
  std::uint32_t block_size = 256;
  vkm::Backend backend = vkm::Backend::threaded;
  std::uint32_t repetitions = 20;
  std::uint64_t seed = 1;
  int workers = 0;             // threaded backend; 0 = OpenMP default
  std::string output;          // benchmark CSV, empty = stdout
  std::string stats_output;    // per-kernel CSV, optional
  std::string profile_output;  // components round profile CSV, optional
  std::optional<std::string> input;  // fixture file instead of generated inputs
  bool inject_fault = false;   // corrupt one result before checking (tests)

  /// Throws ConfigError.
  void validate() const;
};

/// One run geometry: thread count and block size.
struct Geometry {
  std::uint32_t blocks = 0;  // 0 when derived from the thread count
  std::uint32_t threads = 0;
  std::uint32_t block_size = 0;
};

/// Geometries the config sweeps, with thread counts clamped to what the
/// algorithm accepts for n.
std::vector<Geometry> geometries(const BenchConfig& config, std::uint32_t n);

/// Seed for repetition `rep` at size n.
std::uint64_t instance_seed(std::uint64_t base, std::uint32_t n, std::uint32_t rep);

/// Base seed from PRAMLAB_SEED, or `fallback` when unset.
std::uint64_t default_seed(std::uint64_t fallback = 1);

}  // namespace pramlab::bench
