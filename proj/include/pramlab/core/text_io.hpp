#pragma once

#include <iosfwd>
#include <string>

#include "pramlab/core/types.hpp"

namespace pramlab {

class FormatError : public Error {
 public:
  using Error::Error;
};

// List fixtures: first line n, then n successor indices (whitespace separated).
// Graph fixtures: first line "n m", then m lines "u v".

SuccessorList read_list(std::istream& in);
void write_list(std::ostream& out, const SuccessorList& list);

EdgeGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const EdgeGraph& graph);

SuccessorList load_list(const std::string& path);
EdgeGraph load_graph(const std::string& path);
void save_list(const std::string& path, const SuccessorList& list);
void save_graph(const std::string& path, const EdgeGraph& graph);

}  // namespace pramlab
