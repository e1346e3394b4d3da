#pragma once

#include <cstdint>

#include "pramlab/core/types.hpp"

namespace pramlab::gen {

/// Random list over n nodes: head at 0, the other nodes in uniformly random
/// chain order, self-looped tail.
SuccessorList gen_list(std::uint32_t n, std::uint64_t seed);

/// Forest of `trees` random trees over n vertices where nobody has more than k
/// children. Each new vertex attaches to a uniformly chosen vertex that still
/// has room; vertex labels are shuffled afterwards. trees == 0 picks
/// max(1, n / 10^4).
EdgeGraph gen_tree_graph(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                         std::uint32_t trees = 0);

/// Number of trees gen_tree_graph builds by default.
std::uint32_t default_tree_count(std::uint32_t n);

/// Edge count for density d against n(n-1)/2 possible edges.
std::uint64_t edges_for_density(std::uint32_t n, double d);

/// Uniform simple graph with round(d * n(n-1)/2) edges. Requires 0 < d <= 1.
EdgeGraph gen_random_graph(std::uint32_t n, double d, std::uint64_t seed);

/// Uniform simple graph with exactly m distinct non-loop edges. Throws
/// std::invalid_argument when m exceeds n(n-1)/2.
EdgeGraph gen_random_graph_m(std::uint32_t n, std::uint64_t m, std::uint64_t seed);

}  // namespace pramlab::gen
