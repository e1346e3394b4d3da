#include "pramlab/gen/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "pramlab/gen/kiss.hpp"

namespace pramlab::gen {

namespace {

template <class T>
void shuffle(std::vector<T>& v, std::size_t first, Kiss& rng) {
  for (std::size_t i = v.size(); i > first + 1; --i) {
    const std::size_t j = first + rng.below(i - first);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

SuccessorList gen_list(std::uint32_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("list needs at least one node");
  Kiss rng(seed);
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  shuffle(order, 1, rng);
  SuccessorList list;
  list.succ.resize(n);
  for (std::uint32_t k = 0; k + 1 < n; ++k) list.succ[order[k]] = order[k + 1];
  list.succ[order[n - 1]] = order[n - 1];
  return list;
}

std::uint32_t default_tree_count(std::uint32_t n) { return std::max<std::uint32_t>(1, n / 10000); }

EdgeGraph gen_tree_graph(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                         std::uint32_t trees) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  if (k == 0) throw std::invalid_argument("tree degree k must be at least 1");
  if (trees == 0) trees = default_tree_count(n);
  trees = std::min(trees, n);

  Kiss rng(seed);
  std::vector<std::uint32_t> children(n, 0);
  std::vector<std::uint32_t> open;  // vertices with fewer than k children
  open.reserve(n);
  EdgeGraph g;
  g.n = n;
  g.edges.reserve(n - trees);
  for (std::uint32_t v = 0; v < trees; ++v) open.push_back(v);
  for (std::uint32_t v = trees; v < n; ++v) {
    const std::size_t slot = rng.below(open.size());
    const std::uint32_t parent = open[slot];
    g.edges.push_back({parent, v});
    if (++children[parent] == k) {
      open[slot] = open.back();
      open.pop_back();
    }
    open.push_back(v);
  }

  std::vector<VertexIndex> label(n);
  std::iota(label.begin(), label.end(), VertexIndex{0});
  shuffle(label, 0, rng);
  for (Edge& e : g.edges) e = {label[e.u], label[e.v]};
  return g;
}

std::uint64_t edges_for_density(std::uint32_t n, double d) {
  const double pairs = 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
  return static_cast<std::uint64_t>(std::llround(d * pairs));
}

EdgeGraph gen_random_graph(std::uint32_t n, double d, std::uint64_t seed) {
  if (!(d > 0.0 && d <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
  return gen_random_graph_m(n, edges_for_density(n, d), seed);
}

EdgeGraph gen_random_graph_m(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  const std::uint64_t capacity = std::uint64_t{n} * (n - 1) / 2;
  if (m > capacity) {
    throw std::invalid_argument("requested " + std::to_string(m) + " edges but a simple graph on " +
                                std::to_string(n) + " vertices holds at most " +
                                std::to_string(capacity));
  }
  Kiss rng(seed);
  auto key = [n](std::uint64_t u, std::uint64_t v) { return u * n + v; };
  auto draw = [&](std::unordered_set<std::uint64_t>& seen, std::uint64_t count,
                  std::vector<Edge>* out) {
    seen.reserve(count * 2);
    while (seen.size() < count) {
      auto u = static_cast<VertexIndex>(rng.below(n));
      auto v = static_cast<VertexIndex>(rng.below(n));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (seen.insert(key(u, v)).second && out) out->push_back({u, v});
    }
  };

  EdgeGraph g;
  g.n = n;
  g.edges.reserve(m);
  std::unordered_set<std::uint64_t> seen;
  if (m <= capacity / 2) {
    draw(seen, m, &g.edges);
  } else {
    // Dense: sample the edges to leave out, keep the rest in shuffled order.
    draw(seen, capacity - m, nullptr);
    for (VertexIndex u = 0; u < n; ++u) {
      for (VertexIndex v = u + 1; v < n; ++v) {
        if (!seen.count(key(u, v))) g.edges.push_back({u, v});
      }
    }
    shuffle(g.edges, 0, rng);
  }
  return g;
}

}  // namespace pramlab::gen
