#pragma once

#include <vector>

#include "pramlab/core/types.hpp"

namespace pramlab {

/// Throws std::invalid_argument if an endpoint is out of range.
void require_valid_graph(const EdgeGraph& graph);

/// Union-find connected components. Labels are canonical: every vertex is
/// labelled with the smallest vertex index of its component.
std::vector<VertexIndex> seq_components(const EdgeGraph& graph);

/// Relabels an arbitrary component labelling so each vertex carries the
/// minimum vertex index of its class.
std::vector<VertexIndex> canonicalize_labels(const std::vector<VertexIndex>& labels);

std::size_t count_components(const std::vector<VertexIndex>& canonical_labels);

}  // namespace pramlab
