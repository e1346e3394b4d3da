#pragma once

// Independent reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "pramlab/core/types.hpp"

namespace oracles {

// Breadth-first labelling: every vertex gets the smallest vertex of its
// component. Shares no code with the union-find in the library.
inline std::vector<std::uint32_t> bfs_components(const pramlab::EdgeGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.n);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::uint32_t> label(g.n, UINT32_MAX);
  for (std::uint32_t s = 0; s < g.n; ++s) {
    if (label[s] != UINT32_MAX) continue;
    std::queue<std::uint32_t> q;
    q.push(s);
    label[s] = s;  // vertices are scanned in increasing order, so s is the minimum
    while (!q.empty()) {
      const auto x = q.front();
      q.pop();
      for (auto y : adj[x]) {
        if (label[y] == UINT32_MAX) {
          label[y] = s;
          q.push(y);
        }
      }
    }
  }
  return label;
}

// Rank by repeated walking from every node; quadratic, small inputs only.
inline std::vector<std::uint32_t> walk_ranks(const std::vector<std::uint32_t>& succ) {
  std::vector<std::uint32_t> r(succ.size());
  for (std::size_t i = 0; i < succ.size(); ++i) {
    std::uint32_t d = 0;
    for (std::size_t j = i; succ[j] != j; j = succ[j]) ++d;
    r[i] = d;
  }
  return r;
}

// RankArray invariants: tail 0, decreasing by one along the chain, a
// permutation of 0..n-1.
inline bool valid_ranks(const std::vector<std::uint32_t>& succ,
                        const std::vector<std::uint32_t>& rank) {
  const std::size_t n = succ.size();
  if (rank.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] >= n || seen[rank[i]]) return false;
    seen[rank[i]] = true;
    if (succ[i] == i ? rank[i] != 0 : rank[i] != rank[succ[i]] + 1) return false;
  }
  return true;
}

// KISS as published (64-bit version, macro style), transcribed on its own.
struct ReferenceKiss {
  std::uint64_t x = 1234567890987654321ULL, c = 123456123456123456ULL,
                y = 362436362436362436ULL, z = 1066149217761810ULL, t = 0;
  std::uint64_t next() {
    // MWC
    t = (x << 58) + c;
    c = (x >> 6);
    x += t;
    c += (x < t);
    // XSH
    y ^= (y << 13);
    y ^= (y >> 17);
    y ^= (y << 43);
    // CNG
    z = 6906969069ULL * z + 1234567;
    return x + y + z;
  }
};

}  // namespace oracles
