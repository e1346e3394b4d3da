#include "pramlab/gen/kiss.hpp"

#include <stdexcept>

namespace pramlab::gen {

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

KissState kiss_state(std::uint64_t x, std::uint64_t y, std::uint64_t z, std::uint64_t c) {
  const KissState defaults;
  KissState s{x, c, y, z};
  // MWC with multiplier 2^58+1 is stuck at (0,0) and at (2^64-1, 2^58).
  const bool mwc_stuck = (x == 0 && c == 0) || (x == ~0ULL && c == (1ULL << 58));
  if (mwc_stuck) {
    s.x = defaults.x;
    s.c = defaults.c;
  }
  if (y == 0) s.y = defaults.y;
  return s;
}

KissState kiss_seed(std::uint64_t seed) {
  std::uint64_t s = seed;
  const std::uint64_t x = splitmix(s);
  const std::uint64_t y = splitmix(s);
  const std::uint64_t z = splitmix(s);
  // Keep the carry below the multiplier so the MWC starts in its main cycle.
  const std::uint64_t c = splitmix(s) >> 7;
  return kiss_state(x, y, z, c);
}

KissState kiss_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  const std::uint64_t base = splitmix(s);
  std::uint64_t t = stream * 0xd1342543de82ef95ULL;
  return kiss_seed(base ^ splitmix(t));
}

std::uint64_t kiss_next(KissState& s) {
  const std::uint64_t t = (s.x << 58) + s.c;
  s.c = s.x >> 6;
  s.x += t;
  s.c += (s.x < t);
  s.y ^= s.y << 13;
  s.y ^= s.y >> 17;
  s.y ^= s.y << 43;
  s.z = 6906969069ULL * s.z + 1234567ULL;
  return s.x + s.y + s.z;
}

std::uint64_t Kiss::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  // Lemire's nearly divisionless method.
  __uint128_t m = static_cast<__uint128_t>(kiss_next(state_)) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>(kiss_next(state_)) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace pramlab::gen
