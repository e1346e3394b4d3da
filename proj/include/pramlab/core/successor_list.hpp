#pragma once

#include <optional>
#include <string>

#include "pramlab/core/types.hpp"

namespace pramlab {

enum class ListViolationKind {
  empty,
  out_of_range,
  no_tail,
  multiple_tails,
  unreachable,
};

struct ListViolation {
  ListViolationKind kind;
  NodeIndex node = 0;    // offending node
  NodeIndex other = 0;   // successor value or second tail, depending on kind

  std::string describe() const;
};

class InvalidList : public Error {
 public:
  explicit InvalidList(ListViolation v) : Error(v.describe()), violation_(v) {}
  const ListViolation& violation() const { return violation_; }

 private:
  ListViolation violation_;
};

/// Returns the first violated SuccessorList invariant, or nullopt if valid.
/// Checks run in order: range, tail count, reachability from the head.
std::optional<ListViolation> validate_list(const SuccessorList& list);

/// Throws InvalidList on the first violation.
void require_valid_list(const SuccessorList& list);

/// Sequential O(n) list ranking used as the reference oracle.
RankArray seq_rank(const SuccessorList& list);

/// Nodes in chain order starting at the head. Expects a valid list.
std::vector<NodeIndex> chain_order(const SuccessorList& list);

}  // namespace pramlab
