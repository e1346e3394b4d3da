#include "pramlab/concomp/shiloach_vishkin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pramlab/core/edge_graph.hpp"

namespace pramlab::concomp {

using vkm::ArrayMode;
using vkm::GridConfig;
using vkm::ThreadCtx;

std::uint32_t sv_round_bound(std::uint64_t n) {
  if (n <= 1) return 2;
  // Integer check on top of the floating log keeps exact powers of 1.5 honest.
  auto k = static_cast<std::uint32_t>(std::floor(std::log(static_cast<double>(n)) / std::log(1.5)));
  while (std::pow(1.5, k + 1) <= static_cast<double>(n)) ++k;
  while (k > 0 && std::pow(1.5, k) > static_cast<double>(n)) --k;
  return k + 2;
}

ShiloachVishkin::ShiloachVishkin(const EdgeGraph& graph, const SvOptions& options)
    : n_(graph.n),
      items_(2 * static_cast<std::uint64_t>(graph.m())),
      block_size_(options.block_size),
      machine_(options.machine) {
  require_valid_graph(graph);
  if (n_ == 0) throw std::invalid_argument("graph needs at least one vertex");
  p_ = options.p == 0 ? std::min<std::uint32_t>(n_, 864) : options.p;
  if (p_ > n_) {
    throw std::invalid_argument("thread count " + std::to_string(p_) + " exceeds n=" +
                                std::to_string(n_));
  }
  edges_ = machine_.alloc<std::uint64_t>("edges", graph.m());
  for (std::size_t e = 0; e < graph.m(); ++e) {
    edges_[e] = (std::uint64_t{graph.edges[e].u} << 32) | graph.edges[e].v;
  }
  d_ = machine_.alloc<std::uint32_t>("D", n_, 0u, ArrayMode::arbitrary);
  d_other_ = machine_.alloc<std::uint32_t>("D_next", n_, 0u, ArrayMode::arbitrary);
  q_ = machine_.alloc<std::uint32_t>("Q", n_, 0u, ArrayMode::arbitrary);
  w_ = machine_.alloc<std::uint32_t>("w", 1, 0u, ArrayMode::arbitrary);

  auto& notes = machine_.stats().notes;
  notes["m_edges"] = std::to_string(graph.m());
  notes["m_oriented"] = std::to_string(items_);
  notes["p"] = std::to_string(p_);
}

GridConfig ShiloachVishkin::grid() const {
  GridConfig g;
  g.threads = p_;
  g.block_size = std::min(block_size_, p_);
  return g;
}

void ShiloachVishkin::sv0_init() {
  const std::size_t n = n_;
  machine_.launch("SV0", grid(), [&](ThreadCtx& ctx) {
    ctx.strided(n, [&](std::size_t i) {
      ctx.store(d_, i, static_cast<std::uint32_t>(i));
      ctx.store(q_, i, 0u);
    });
  });
}

void ShiloachVishkin::begin_round() {
  ++s_;
  machine_.begin_round();
  w_[0] = 0;
}

void ShiloachVishkin::sv1a_shortcut() {
  const std::size_t n = n_;
  machine_.launch("SV1a", grid(), [&](ThreadCtx& ctx) {
    ctx.strided(n, [&](std::size_t i) {
      const std::uint32_t di = ctx.load(d_, i);
      ctx.store(d_other_, i, ctx.load(d_, di));
    });
  });
  // The previous buffer stays behind as the snapshot SV1b compares against.
  swap(d_, d_other_);
}

void ShiloachVishkin::sv1b_mark() {
  const std::size_t n = n_;
  const std::uint32_t s = s_;
  machine_.launch("SV1b", grid(), [&](ThreadCtx& ctx) {
    ctx.strided(n, [&](std::size_t i) {
      const std::uint32_t before = ctx.load(d_other_, i);
      const std::uint32_t now = ctx.load(d_, i);
      if (ctx.branch(before != now)) ctx.store_arbitrary(q_, now, s);
    });
  });
}

void ShiloachVishkin::sv2_hook() {
  const std::uint32_t s = s_;
  machine_.launch("SV2", grid(), [&](ThreadCtx& ctx) {
    ctx.strided(items_, [&](std::size_t e) {
      const std::uint64_t word = ctx.load(edges_, e >> 1);
      const auto a = static_cast<std::uint32_t>(word >> 32);
      const auto b = static_cast<std::uint32_t>(word);
      const std::uint32_t u = (e & 1) ? b : a;
      const std::uint32_t v = (e & 1) ? a : b;
      const std::uint32_t du = ctx.load(d_, u);
      const std::uint32_t dv = ctx.load(d_, v);
      const std::uint32_t ddu = ctx.load(d_, du);
      if (ctx.branch(du == ddu && dv < du)) {
        ctx.store_arbitrary(d_, du, dv);
        ctx.store_arbitrary(q_, dv, s);
      }
    });
  });
}

void ShiloachVishkin::sv3_stagnant_hook() {
  const std::uint32_t s = s_;
  machine_.launch("SV3", grid(), [&](ThreadCtx& ctx) {
    ctx.strided(items_, [&](std::size_t e) {
      const std::uint64_t word = ctx.load(edges_, e >> 1);
      const auto a = static_cast<std::uint32_t>(word >> 32);
      const auto b = static_cast<std::uint32_t>(word);
      const std::uint32_t u = (e & 1) ? b : a;
      const std::uint32_t v = (e & 1) ? a : b;
      const std::uint32_t du = ctx.load(d_, u);
      const std::uint32_t dv = ctx.load(d_, v);
      const std::uint32_t ddu = ctx.load(d_, du);
      const std::uint32_t qdu = ctx.load(q_, du);
      if (ctx.branch(du == ddu && qdu != s && du != dv)) ctx.store_arbitrary(d_, du, dv);
    });
  });
}

void ShiloachVishkin::sv4_shortcut() {
  const std::size_t n = n_;
  machine_.launch("SV4", grid(), [&](ThreadCtx& ctx) {
    ctx.strided(n, [&](std::size_t i) {
      const std::uint32_t di = ctx.load(d_, i);
      ctx.store(d_other_, i, ctx.load(d_, di));
    });
  });
  swap(d_, d_other_);
}

bool ShiloachVishkin::sv5_converged() {
  const std::size_t n = n_;
  const std::uint32_t s = s_;
  machine_.launch("SV5", grid(), [&](ThreadCtx& ctx) {
    bool changed = false;
    ctx.strided(n, [&](std::size_t i) { changed |= ctx.load(q_, i) == s; });
    if (ctx.branch(changed)) ctx.store_arbitrary(w_, 0, 1u);
  });
  return w_[0] == 0;
}

ParentForest ShiloachVishkin::forest() const {
  ParentForest f;
  f.parent.assign(d_.data(), d_.data() + n_);
  f.stamp.assign(q_.data(), q_.data() + n_);
  return f;
}

std::uint32_t ShiloachVishkin::root_count() const {
  std::uint32_t roots = 0;
  for (std::uint32_t i = 0; i < n_; ++i) roots += d_[i] == i;
  return roots;
}

void ShiloachVishkin::set_forest(const ParentForest& f) {
  if (f.parent.size() != n_ || f.stamp.size() != n_) {
    throw std::invalid_argument("forest size mismatch");
  }
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (f.parent[i] >= n_) throw std::invalid_argument("parent out of range");
    d_[i] = f.parent[i];
    q_[i] = f.stamp[i];
  }
}

CcResult sv_components(const EdgeGraph& graph, const SvOptions& options) {
  ShiloachVishkin sv(graph, options);
  sv.sv0_init();
  const std::uint32_t bound = sv_round_bound(graph.n);
  CcResult out;
  for (;;) {
    // Runaway guard only; the bound itself is checked by the tests.
    if (sv.round() >= 4 * bound + 8) {
      throw Error("components did not converge within " + std::to_string(sv.round()) + " rounds");
    }
    sv.begin_round();
    sv.sv1a_shortcut();
    sv.sv1b_mark();
    sv.sv2_hook();
    sv.sv3_stagnant_hook();
    sv.sv4_shortcut();
    const bool done = sv.sv5_converged();
    if (options.track_roots) out.roots_per_round.push_back(sv.root_count());
    if (done) break;
  }
  out.rounds = sv.round();
  out.labels = canonicalize_labels(sv.forest().parent);
  out.stats = sv.stats();
  return out;
}

}  // namespace pramlab::concomp
