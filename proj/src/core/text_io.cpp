#include "pramlab/core/text_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace pramlab {

namespace {

std::uint64_t read_count(std::istream& in, const char* what) {
  std::int64_t value = -1;
  if (!(in >> value) || value < 0 || value > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError(std::string("expected ") + what);
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

SuccessorList read_list(std::istream& in) {
  const auto n = read_count(in, "list length");
  SuccessorList list;
  list.succ.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    list.succ[i] = static_cast<NodeIndex>(read_count(in, "successor index"));
  }
  return list;
}

void write_list(std::ostream& out, const SuccessorList& list) {
  out << list.size() << '\n';
  for (NodeIndex s : list.succ) out << s << '\n';
}

EdgeGraph read_graph(std::istream& in) {
  EdgeGraph graph;
  graph.n = static_cast<std::uint32_t>(read_count(in, "vertex count"));
  const auto m = read_count(in, "edge count");
  graph.edges.resize(m);
  for (auto& e : graph.edges) {
    e.u = static_cast<VertexIndex>(read_count(in, "edge endpoint"));
    e.v = static_cast<VertexIndex>(read_count(in, "edge endpoint"));
  }
  return graph;
}

void write_graph(std::ostream& out, const EdgeGraph& graph) {
  out << graph.n << ' ' << graph.m() << '\n';
  for (const Edge& e : graph.edges) out << e.u << ' ' << e.v << '\n';
}

SuccessorList load_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_list(in);
}

EdgeGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_graph(in);
}

void save_list(const std::string& path, const SuccessorList& list) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  write_list(out, list);
}

void save_graph(const std::string& path, const EdgeGraph& graph) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  write_graph(out, graph);
}

}  // namespace pramlab
