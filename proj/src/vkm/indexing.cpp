#include "pramlab/vkm/indexing.hpp"

#include <stdexcept>

namespace pramlab::vkm {

namespace {

void check(std::size_t i, std::size_t p) {
  if (p == 0) throw std::invalid_argument("thread count must be positive");
  if (i >= p) throw std::invalid_argument("thread index out of range");
}

}  // namespace

std::vector<std::size_t> stride_indices(std::size_t i, std::size_t p, std::size_t n) {
  check(i, p);
  std::vector<std::size_t> out;
  for (std::size_t k = i; k < n; k += p) out.push_back(k);
  return out;
}

std::vector<std::size_t> partition_indices(std::size_t i, std::size_t p, std::size_t n) {
  check(i, p);
  const std::size_t chunk = (n + p - 1) / p;
  std::vector<std::size_t> out;
  const std::size_t begin = i * chunk;
  for (std::size_t k = begin; k < n && k < begin + chunk; ++k) out.push_back(k);
  return out;
}

}  // namespace pramlab::vkm
