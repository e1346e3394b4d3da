#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pramlab {

using NodeIndex = std::uint32_t;
using VertexIndex = std::uint32_t;

/// Linked list stored as an array of successor indices. The head is always
/// node 0 and the tail is the unique node with succ[j] == j.
struct SuccessorList {
  std::vector<NodeIndex> succ;

  std::size_t size() const { return succ.size(); }
  static constexpr NodeIndex head = 0;
};

/// rank[i] is the number of links from node i to the tail.
using RankArray = std::vector<std::uint32_t>;

struct Edge {
  VertexIndex u = 0;
  VertexIndex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected edge list. Each edge is stored once; kernels evaluate both
/// orientations.
struct EdgeGraph {
  std::uint32_t n = 0;
  std::vector<Edge> edges;

  std::size_t m() const { return edges.size(); }
};

/// Shiloach-Vishkin parent pointers (D) and round stamps (Q).
struct ParentForest {
  std::vector<VertexIndex> parent;
  std::vector<std::uint32_t> stamp;
};

/// Base for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested mode exceeds what the algorithm variant supports.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Same-kernel conflicting access detected by the simulated backend.
class RaceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pramlab
