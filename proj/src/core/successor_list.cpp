#include "pramlab/core/successor_list.hpp"

#include <vector>

namespace pramlab {

std::string ListViolation::describe() const {
  switch (kind) {
    case ListViolationKind::empty:
      return "list is empty";
    case ListViolationKind::out_of_range:
      return "succ[" + std::to_string(node) + "] = " + std::to_string(other) + " is out of range";
    case ListViolationKind::no_tail:
      return "no self-looped tail";
    case ListViolationKind::multiple_tails:
      return "multiple self-loops at nodes " + std::to_string(node) + " and " +
             std::to_string(other);
    case ListViolationKind::unreachable:
      return "node " + std::to_string(node) + " is unreachable from the head";
  }
  return "unknown violation";
}

std::optional<ListViolation> validate_list(const SuccessorList& list) {
  const std::size_t n = list.size();
  if (n == 0) return ListViolation{ListViolationKind::empty};

  std::optional<NodeIndex> tail;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeIndex s = list.succ[i];
    if (s >= n) {
      return ListViolation{ListViolationKind::out_of_range, static_cast<NodeIndex>(i), s};
    }
    if (s == i) {
      if (tail) {
        return ListViolation{ListViolationKind::multiple_tails, *tail, static_cast<NodeIndex>(i)};
      }
      tail = static_cast<NodeIndex>(i);
    }
  }
  if (!tail) return ListViolation{ListViolationKind::no_tail};

  // With one tail and in-range links, a walk of at most n steps from the
  // head either reaches the tail having seen every node or some node is left.
  std::vector<bool> seen(n, false);
  NodeIndex cur = SuccessorList::head;
  std::size_t visited = 0;
  while (!seen[cur]) {
    seen[cur] = true;
    ++visited;
    if (list.succ[cur] == cur) break;
    cur = list.succ[cur];
  }
  if (visited != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i]) return ListViolation{ListViolationKind::unreachable, static_cast<NodeIndex>(i)};
    }
  }
  return std::nullopt;
}

void require_valid_list(const SuccessorList& list) {
  if (auto v = validate_list(list)) throw InvalidList(*v);
}

std::vector<NodeIndex> chain_order(const SuccessorList& list) {
  std::vector<NodeIndex> order;
  order.reserve(list.size());
  NodeIndex cur = SuccessorList::head;
  for (;;) {
    order.push_back(cur);
    const NodeIndex next = list.succ[cur];
    if (next == cur) break;
    cur = next;
  }
  return order;
}

RankArray seq_rank(const SuccessorList& list) {
  require_valid_list(list);
  const auto order = chain_order(list);
  const std::size_t n = order.size();
  RankArray rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = static_cast<std::uint32_t>(n - 1 - k);
  return rank;
}

}  // namespace pramlab
