#pragma once

#include <cstdint>
#include <limits>

namespace pramlab::gen {

/// State of the 64-bit KISS generator: a multiply-with-carry pair (x, c),
/// a xorshift word y and a congruential word z.
struct KissState {
  std::uint64_t x = 1234567890987654321ULL;
  std::uint64_t c = 123456123456123456ULL;
  std::uint64_t y = 362436362436362436ULL;
  std::uint64_t z = 1066149217761810ULL;

  friend bool operator==(const KissState&, const KissState&) = default;
};

/// Builds a state from explicit components. Components that would freeze a
/// sub-generator (y == 0, or an MWC fixed point) are replaced by the
/// defaults for that sub-generator.
KissState kiss_state(std::uint64_t x, std::uint64_t y, std::uint64_t z, std::uint64_t c);

/// Expands a single seed into a full state with splitmix64.
KissState kiss_seed(std::uint64_t seed);

/// Independent stream `stream` derived from `seed` (per-thread generators).
KissState kiss_stream(std::uint64_t seed, std::uint64_t stream);

/// Advances the state and returns the next 64-bit output.
std::uint64_t kiss_next(KissState& s);

/// UniformRandomBitGenerator wrapper.
class Kiss {
 public:
  using result_type = std::uint64_t;

  Kiss() = default;
  explicit Kiss(std::uint64_t seed) : state_(kiss_seed(seed)) {}
  explicit Kiss(const KissState& state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return kiss_next(state_); }

  /// Uniform draw in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(kiss_next(state_) >> 11) * 0x1.0p-53; }

  const KissState& state() const { return state_; }

 private:
  KissState state_;
};

}  // namespace pramlab::gen
