#include "pramlab/vkm/arbitrary.hpp"

namespace pramlab::vkm {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint32_t arbitrary_key(std::uint64_t seed, std::uint64_t array, std::uint64_t index,
                            std::uint64_t epoch, std::uint64_t value) {
  std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ULL);
  h = mix(h ^ array);
  h = mix(h ^ index);
  h = mix(h ^ epoch);
  h = mix(h ^ value);
  return static_cast<std::uint32_t>(h >> 32);
}

}  // namespace pramlab::vkm
