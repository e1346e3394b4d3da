#pragma once

#include <cstddef>
#include <vector>

namespace pramlab::vkm {

/// Items thread i touches under striding: i, i+p, i+2p, ... below n.
std::vector<std::size_t> stride_indices(std::size_t i, std::size_t p, std::size_t n);

/// Items thread i touches under partitioning: a contiguous chunk of
/// ceil(n/p) items; the last non-empty chunk may be short.
std::vector<std::size_t> partition_indices(std::size_t i, std::size_t p, std::size_t n);

}  // namespace pramlab::vkm
