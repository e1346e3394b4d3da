#pragma once

#include <cstdint>
#include <string_view>

namespace pramlab::vkm {

enum class Backend { simulated, threaded };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view text);

/// Launch geometry. Warps and half-warps are fixed hardware constants; the
/// block size is capped at 768 threads.
struct GridConfig {
  static constexpr std::uint32_t warp_size = 32;
  static constexpr std::uint32_t half_warp = 16;
  static constexpr std::uint32_t max_block_size = 768;

  std::uint32_t threads = 1;
  std::uint32_t block_size = 256;

  std::uint32_t blocks() const { return (threads + block_size - 1) / block_size; }

  /// Throws std::invalid_argument when threads == 0 or block_size is outside [1,768].
  void validate() const;

  /// Splits `threads` into `blocks` equally sized blocks (rounding the block size up).
  static GridConfig from_blocks(std::uint32_t threads, std::uint32_t blocks);
};

}  // namespace pramlab::vkm
