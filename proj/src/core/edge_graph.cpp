#include "pramlab/core/edge_graph.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pramlab {

void require_valid_graph(const EdgeGraph& graph) {
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const Edge& edge = graph.edges[e];
    if (edge.u >= graph.n || edge.v >= graph.n) {
      throw std::invalid_argument("edge " + std::to_string(e) + " (" + std::to_string(edge.u) +
                                  "," + std::to_string(edge.v) + ") has an endpoint outside [0," +
                                  std::to_string(graph.n) + ")");
    }
  }
}

namespace {

VertexIndex find_root(std::vector<VertexIndex>& parent, VertexIndex x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<VertexIndex> seq_components(const EdgeGraph& graph) {
  require_valid_graph(graph);
  std::vector<VertexIndex> parent(graph.n);
  for (VertexIndex i = 0; i < graph.n; ++i) parent[i] = i;

  // Linking the larger root under the smaller keeps each root the minimum
  // of its set, so the root is already the canonical label.
  for (const Edge& e : graph.edges) {
    VertexIndex a = find_root(parent, e.u);
    VertexIndex b = find_root(parent, e.v);
    if (a == b) continue;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
  std::vector<VertexIndex> labels(graph.n);
  for (VertexIndex i = 0; i < graph.n; ++i) labels[i] = find_root(parent, i);
  return labels;
}

std::vector<VertexIndex> canonicalize_labels(const std::vector<VertexIndex>& labels) {
  std::unordered_map<VertexIndex, VertexIndex> smallest;
  smallest.reserve(labels.size());
  for (VertexIndex i = 0; i < labels.size(); ++i) smallest.try_emplace(labels[i], i);
  std::vector<VertexIndex> out(labels.size());
  for (VertexIndex i = 0; i < labels.size(); ++i) out[i] = smallest.at(labels[i]);
  return out;
}

std::size_t count_components(const std::vector<VertexIndex>& canonical_labels) {
  std::size_t count = 0;
  for (VertexIndex i = 0; i < canonical_labels.size(); ++i) count += canonical_labels[i] == i;
  return count;
}

}  // namespace pramlab
