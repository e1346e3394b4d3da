#include "pramlab/bench/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "pramlab/listrank/random_splitter.hpp"

namespace pramlab::bench {

namespace {

constexpr std::pair<Algorithm, std::string_view> kAlgorithms[] = {
    {Algorithm::seq_lr, "seq_lr"}, {Algorithm::wyllie, "wyllie"},
    {Algorithm::wyllie_single, "wyllie_single"}, {Algorithm::rs48, "rs48"},
    {Algorithm::rs64, "rs64"}, {Algorithm::rs_even, "rs_even"},
    {Algorithm::seq_cc, "seq_cc"}, {Algorithm::sv, "sv"},
};

constexpr std::pair<Family, std::string_view> kFamilies[] = {
    {Family::list, "list"}, {Family::tree, "tree"}, {Family::random, "random"}};

}  // namespace

std::string_view to_string(Algorithm a) {
  for (auto [v, name] : kAlgorithms) {
    if (v == a) return name;
  }
  return "?";
}

std::string_view to_string(Family f) {
  for (auto [v, name] : kFamilies) {
    if (v == f) return name;
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  for (auto [v, name] : kAlgorithms) {
    if (name == text) return v;
  }
  throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

Family parse_family(std::string_view text) {
  for (auto [v, name] : kFamilies) {
    if (name == text) return v;
  }
  throw ConfigError("unknown input family '" + std::string(text) + "'");
}

bool is_list_ranking(Algorithm a) {
  return a == Algorithm::seq_lr || a == Algorithm::wyllie || a == Algorithm::wyllie_single ||
         a == Algorithm::rs48 || a == Algorithm::rs64 || a == Algorithm::rs_even;
}

bool uses_machine(Algorithm a) { return a != Algorithm::seq_lr && a != Algorithm::seq_cc; }

void BenchConfig::validate() const {
  if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (is_list_ranking(algorithm) && family != Family::list) {
    throw ConfigError(std::string(to_string(algorithm)) + " needs the list family");
  }
  if (family == Family::tree && k < 1) throw ConfigError("tree degree k must be at least 1");
  if (family == Family::random && !(density > 0.0 && density <= 1.0)) {
    throw ConfigError("density must lie in (0, 1]");
  }
  for (std::uint32_t n : sizes) {
    if (n == 0) throw ConfigError("sizes must be positive");
  }
  if (block_size == 0 || block_size > vkm::GridConfig::max_block_size) {
    throw ConfigError("block size must lie in [1, 768]");
  }
  for (std::uint32_t b : blocks) {
    if (b == 0) throw ConfigError("block counts must be positive");
  }
  if (!blocks.empty() && threads != 0) {
    throw ConfigError("give either --threads or --blocks, not both");
  }
  if (algorithm == Algorithm::wyllie_single) {
    if (std::any_of(blocks.begin(), blocks.end(), [](std::uint32_t b) { return b != 1; })) {
      throw ConfigError("wyllie_single runs in exactly one block");
    }
    if (threads > vkm::GridConfig::max_block_size) {
      throw ConfigError("wyllie_single supports at most 768 threads");
    }
  }
  if (algorithm == Algorithm::rs48) {
    std::uint64_t p = threads;
    for (std::uint32_t b : blocks) p = std::max<std::uint64_t>(p, std::uint64_t{b} * block_size);
    if (p > listrank::kP48MaxThreads) {
      throw ConfigError("rs48 supports at most " + std::to_string(listrank::kP48MaxThreads) +
                        " threads, got " + std::to_string(p));
    }
  }
}

std::vector<Geometry> geometries(const BenchConfig& c, std::uint32_t n) {
  // rs and sv need p <= n; Wyllie takes any p.
  const bool clamp = c.algorithm != Algorithm::wyllie && c.algorithm != Algorithm::wyllie_single;
  auto fit = [&](std::uint32_t p) { return clamp ? std::min(p, n) : p; };
  std::vector<Geometry> out;
  if (c.blocks.empty()) {
    std::uint32_t p = c.threads;
    if (p == 0) {
      p = c.algorithm == Algorithm::wyllie_single ? c.block_size
                                                 : listrank::default_splitter_count();
    }
    p = std::max<std::uint32_t>(1, fit(p));
    const std::uint32_t bs =
        c.algorithm == Algorithm::wyllie_single ? p : std::min(c.block_size, p);
    out.push_back({0, p, bs});
    return out;
  }
  for (std::uint32_t b : c.blocks) {
    const std::uint32_t p = std::max<std::uint32_t>(1, fit(b * c.block_size));
    out.push_back({b, p, std::min(c.block_size, p)});
  }
  return out;
}

std::uint64_t instance_seed(std::uint64_t base, std::uint32_t n, std::uint32_t rep) {
  std::uint64_t z = base ^ (std::uint64_t{n} << 20) ^ (std::uint64_t{rep} * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("PRAMLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("PRAMLAB_SEED is not an unsigned integer: ") + env);
    }
  }
  return fallback;
}

}  // namespace pramlab::bench
