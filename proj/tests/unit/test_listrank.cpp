#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "pramlab/core/successor_list.hpp"
#include "pramlab/gen/generators.hpp"
#include "pramlab/listrank/random_splitter.hpp"
#include "pramlab/listrank/wyllie.hpp"

using namespace pramlab;
using namespace pramlab::listrank;

namespace {

vkm::MachineOptions sim() {
  vkm::MachineOptions o;
  o.backend = vkm::Backend::simulated;
  return o;
}

std::uint64_t payload(const KernelCounters& k, const std::string& array) {
  auto it = k.per_array.find(array);
  return it == k.per_array.end() ? 0 : it->second.payload_bytes;
}

}  // namespace

TEST_CASE("walking oracle agrees with seq_rank") {
  for (std::uint32_t n : {1u, 2u, 17u, 500u}) {
    const auto l = gen::gen_list(n, n);
    CHECK(seq_rank(l) == oracles::walk_ranks(l.succ));
  }
}

TEST_CASE("jump step counts") {
  CHECK(jump_steps(1) == 0);
  CHECK(jump_steps(2) == 1);
  CHECK(jump_steps(8) == 3);
  CHECK(jump_steps(9) == 4);
  CHECK(jump_steps(1024) == 10);
  CHECK(jump_steps(1025) == 11);
}

TEST_CASE("Wyllie examples") {
  const SuccessorList l{{2, 3, 1, 3}};  // 0 -> 2 -> 1 -> 3
  for (auto variant : {WyllieVariant::multi_kernel, WyllieVariant::single_block}) {
    for (auto backend : {vkm::Backend::simulated, vkm::Backend::threaded}) {
      WyllieOptions o;
      o.p = 4;
      o.variant = variant;
      o.machine.backend = backend;
      CHECK(wyllie_rank(l, o).rank == RankArray{3, 1, 2, 0});
    }
  }
  WyllieOptions o;
  o.machine = sim();
  CHECK(wyllie_rank(SuccessorList{{0}}, o).rank == RankArray{0});
  CHECK(wyllie_rank(SuccessorList{{0}}, o).stats.kernel_launches == 1);
  o.p = 8;
  const auto r8 = wyllie_rank(gen::gen_list(8, 1), o);
  CHECK(r8.stats.kernel("wyllie_jump")->launches == 3);
  CHECK(r8.stats.kernel_launches == 4);
}

TEST_CASE("Wyllie ranks agree with the oracle for many shapes") {
  for (std::uint32_t n : {2u, 3u, 31u, 32u, 33u, 1000u, 4099u}) {
    const auto l = gen::gen_list(n, 5 * n);
    const auto expect = seq_rank(l);
    for (std::uint32_t p : {1u, 7u, 256u, 768u}) {
      WyllieOptions o;
      o.p = p;
      o.machine = sim();
      REQUIRE(wyllie_rank(l, o).rank == expect);
      o.variant = WyllieVariant::single_block;
      REQUIRE(wyllie_rank(l, o).rank == expect);
    }
  }
}

TEST_CASE("Wyllie traffic per step") {
  const std::uint32_t n = 1000;
  const auto l = gen::gen_list(n, 3);
  WyllieOptions o;
  o.p = 256;
  o.machine = sim();
  const auto multi = wyllie_rank(l, o);
  const auto* jump = multi.stats.kernel("wyllie_jump");
  REQUIRE(jump);
  CHECK(jump->launches == jump_steps(n));
  CHECK(jump->writes == std::uint64_t{n} * jump_steps(n));
  CHECK(jump->reads == 2ull * n * jump_steps(n));
  o.variant = WyllieVariant::single_block;
  o.p = 512;
  const auto single = wyllie_rank(l, o);
  CHECK(single.stats.kernel_launches == 1);
  const auto* blk = single.stats.kernel("wyllie_single_block");
  REQUIRE(blk);
  CHECK(blk->launches == 1);
  CHECK(single.stats.block_syncs >= jump_steps(n));
  CHECK(blk->reads - n == std::uint64_t{n} * jump_steps(n));
}

TEST_CASE("single-block Wyllie refuses more threads than a block") {
  WyllieOptions o;
  o.variant = WyllieVariant::single_block;
  o.p = 769;
  CHECK_THROWS_AS(wyllie_rank(gen::gen_list(2000, 1), o), CapabilityError);
  o.p = 768;
  CHECK_NOTHROW(wyllie_rank(gen::gen_list(2000, 1), o));
}

TEST_CASE("invalid lists are rejected") {
  WyllieOptions o;
  CHECK_THROWS_AS(wyllie_rank(SuccessorList{{1, 0}}, o), InvalidList);
  RsOptions r;
  CHECK_THROWS_AS(rs_rank(SuccessorList{{1, 1, 1}}, r), InvalidList);
}

TEST_CASE("random splitter examples") {
  const SuccessorList l{{2, 3, 1, 3}};
  for (auto packing : {Packing::P48, Packing::P64}) {
    for (std::uint32_t p = 1; p <= 4; ++p) {
      RsOptions o;
      o.p = p;
      o.packing = packing;
      o.machine = sim();
      CHECK(rs_rank(l, o).rank == RankArray{3, 1, 2, 0});
    }
  }
  RsOptions o;
  o.machine = sim();
  CHECK(rs_rank(SuccessorList{{0}}, o).rank == RankArray{0});
  o.p = 5;
  CHECK_THROWS_AS(rs_rank(l, o), std::invalid_argument);
}

TEST_CASE("random splitter ranks agree with the oracle") {
  for (std::uint32_t n : {2u, 10u, 100u, 1000u, 20000u}) {
    const auto l = gen::gen_list(n, n + 1);
    const auto expect = seq_rank(l);
    for (std::uint32_t p : {1u, 3u, 64u, 864u, 5000u}) {
      if (p > n) continue;
      for (auto packing : {Packing::P48, Packing::P64}) {
        for (auto backend : {vkm::Backend::simulated, vkm::Backend::threaded}) {
          RsOptions o;
          o.p = p;
          o.packing = packing;
          o.machine.backend = backend;
          o.seed = p * 31 + n;
          REQUIRE(rs_rank(l, o).rank == expect);
        }
      }
    }
  }
}

TEST_CASE("splitter selection") {
  const auto s = select_random_splitters(1000, 100, 4);
  CHECK(s.size() == 100);
  CHECK(s[0] == 0);
  auto sorted = s;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(select_random_splitters(1000, 100, 4) == s);
  CHECK(select_random_splitters(10, 10, 4).size() == 10);
  CHECK_THROWS_AS(select_random_splitters(10, 11, 4), std::invalid_argument);
  CHECK_THROWS_AS(select_random_splitters(10, 0, 4), std::invalid_argument);

  const SuccessorList l{{2, 3, 1, 3}};
  CHECK(select_even_splitters(l, 2) == std::vector<NodeIndex>{0, 1});
  CHECK_THROWS_AS(select_even_splitters(l, 3), std::invalid_argument);
}

TEST_CASE("RS1 initialises every node with one write") {
  const std::uint32_t n = 5000;
  for (auto packing : {Packing::P48, Packing::P64}) {
    RsOptions o;
    o.p = 100;
    o.packing = packing;
    o.machine = sim();
    RandomSplitterRanker rk(gen::gen_list(n, 2), o);
    rk.rs1_init();
    const auto* k = rk.stats().kernel("rs1_init");
    CHECK(k->writes == n);
    CHECK(k->reads == 0);
    CHECK(k->divergence_events == 0);
    const auto m = rk.marks();
    CHECK(std::all_of(m.owner.begin(), m.owner.end(),
                      [&](std::uint32_t v) { return v == no_owner(packing); }));
  }
}

TEST_CASE("RS2 marks exactly the splitters") {
  const std::uint32_t n = 50;
  const auto l = gen::gen_list(n, 6);
  for (std::uint32_t p : {1u, 7u, n}) {
    RsOptions o;
    o.p = p;
    o.machine = sim();
    RandomSplitterRanker rk(l, o);
    rk.rs1_init();
    const auto s = select_random_splitters(n, p, 9);
    rk.rs2_select(s);
    const auto m = rk.marks();
    std::uint32_t marked = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (m.owner[v] != no_owner(Packing::P64)) {
        ++marked;
        CHECK(s[m.owner[v]] == v);
        CHECK(m.local_rank[v] == 0);
      }
    }
    CHECK(marked == p);
  }
  RsOptions o;
  o.p = 2;
  RandomSplitterRanker rk(l, o);
  rk.rs1_init();
  CHECK_THROWS_AS(rk.rs2_select(std::vector<NodeIndex>{3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(rk.rs2_select(std::vector<NodeIndex>{0, 0}), std::invalid_argument);
}

TEST_CASE("RS3 sub-lists partition the list") {
  const std::uint32_t n = 3000;
  const auto l = gen::gen_list(n, 12);
  const auto ranks = seq_rank(l);
  RsOptions o;
  o.p = 40;
  o.machine = sim();
  RandomSplitterRanker rk(l, o);
  rk.rs1_init();
  const auto s = select_random_splitters(n, 40, 3);
  rk.rs2_select(s);
  rk.rs3_walk();
  const auto sp = rk.splitters();
  const auto m = rk.marks();
  CHECK(std::accumulate(sp.sublist_len.begin(), sp.sublist_len.end(), 0u) == n);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto owner = m.owner[v];
    REQUIRE(owner < 40);
    // owner's splitter sits local_rank places before v
    REQUIRE(ranks[s[owner]] - ranks[v] == m.local_rank[v]);
    REQUIRE(m.local_rank[v] < sp.sublist_len[owner]);
  }
  // the splitter list is a single chain ending at the tail's owner
  std::uint32_t tail_owners = 0;
  for (std::uint32_t i = 0; i < 40; ++i) tail_owners += sp.splitter_succ[i] == i;
  CHECK(tail_owners == 1);
}

TEST_CASE("RS3 payload per node") {
  const std::uint32_t n = 1 << 14;
  const auto l = gen::gen_list(n, 21);
  for (auto packing : {Packing::P48, Packing::P64}) {
    RsOptions o;
    o.p = 128;
    o.packing = packing;
    o.machine = sim();
    const auto r = rs_rank(l, o);
    const auto* k = r.stats.kernel("rs3_walk");
    REQUIRE(k);
    std::uint64_t node_bits;
    if (packing == Packing::P48) {
      node_bits = 8 * (payload(*k, "mark") + payload(*k, "rank") + payload(*k, "succ"));
      CHECK(node_bits == 96ull * n);
    } else {
      node_bits = 8 * (payload(*k, "mark_rank") + payload(*k, "succ"));
      CHECK(node_bits == 160ull * n);
    }
  }
}

TEST_CASE("RS4 reduced list extremes") {
  const std::uint32_t n = 777;
  const auto l = gen::gen_list(n, 8);
  RsOptions o;
  o.p = 1;
  o.machine = sim();
  auto r1 = rs_rank(l, o);
  CHECK(r1.splitters.splitter_rank == std::vector<std::uint32_t>{n - 1});
  CHECK(r1.splitters.sublist_len == std::vector<std::uint32_t>{n});
  o.p = n;
  auto rn = rs_rank(l, o);
  const auto expect = seq_rank(l);
  for (std::uint32_t i = 0; i < n; ++i) {
    REQUIRE(rn.splitters.splitter_rank[i] == expect[rn.splitters.splitter_node[i]]);
  }
  CHECK(rn.stats.kernel("rs4_single_block"));
  CHECK(rn.stats.kernel("rs4_single_block")->launches == 1);
}

TEST_CASE("packing does not change the ranks or the RS1/RS5 shape") {
  const auto l = gen::gen_list(40000, 77);
  RsOptions o;
  o.p = 512;
  o.machine = sim();
  o.packing = Packing::P48;
  const auto a = rs_rank(l, o);
  o.packing = Packing::P64;
  const auto b = rs_rank(l, o);
  CHECK(a.rank == b.rank);
  for (const auto* st : {&a.stats, &b.stats}) {
    CHECK(st->kernel("rs1_init")->divergence_events == 0);
    CHECK(st->kernel("rs5_expand")->divergence_events == 0);
    CHECK(st->kernel_launches == 5);
  }
  // coalesced sweeps cost far less than the pointer walk
  CHECK(a.stats.kernel("rs3_walk")->transactions > 5 * a.stats.kernel("rs5_expand")->transactions);
}

TEST_CASE("48-bit packing thread cap") {
  const auto l = gen::gen_list(20000, 1);
  RsOptions o;
  o.packing = Packing::P48;
  o.p = kP48MaxThreads;
  CHECK_NOTHROW(rs_rank(l, o));
  o.p = kP48MaxThreads + 1;
  CHECK_THROWS_AS(rs_rank(l, o), CapabilityError);
  o.packing = Packing::P64;
  CHECK(rs_rank(l, o).rank == seq_rank(l));
}

TEST_CASE("default thread count") {
  CHECK(default_splitter_count() == 864);
  RsOptions o;
  RandomSplitterRanker small(gen::gen_list(100, 1), o);
  CHECK(small.threads() == 100);
  RandomSplitterRanker big(gen::gen_list(5000, 1), o);
  CHECK(big.threads() == 864);
}

TEST_CASE("superlinear work is flagged") {
  RsOptions o;
  o.p = 1000;
  CHECK(rs_rank(gen::gen_list(5000, 1), o).stats.flag("superlinear_work"));
  o.p = 100;
  CHECK_FALSE(rs_rank(gen::gen_list(5000, 1), o).stats.flag("superlinear_work"));
}

TEST_CASE("even splitters give equal sub-lists") {
  const auto l = gen::gen_list(6000, 4);
  RsOptions o;
  o.p = 60;
  o.machine = sim();
  const auto r = rs_rank_even(l, o);
  CHECK(r.rank == seq_rank(l));
  const auto st = sublist_stats(r.splitters);
  CHECK(st.max_len == 100);
  CHECK(st.mean_len == doctest::Approx(100.0));
  CHECK(st.histogram.size() == 1);
  CHECK(r.stats.notes.at("splitters") == "even");
  o.p = 7;
  CHECK_THROWS_AS(rs_rank_even(l, o), std::invalid_argument);
}

TEST_CASE("sublist stats") {
  SplitterSet s;
  s.r = 4;
  s.sublist_len = {1, 5, 5, 9};
  const auto st = sublist_stats(s);
  CHECK(st.max_len == 9);
  CHECK(st.mean_len == doctest::Approx(5.0));
  CHECK(st.histogram.at(5) == 2);
}

TEST_CASE("in-place ranking overwrites the successor array") {
  const auto l = gen::gen_list(3000, 9);
  RsOptions o;
  o.p = 50;
  o.in_place = true;
  o.machine = sim();
  const auto r = rs_rank(l, o);
  CHECK(r.rank == seq_rank(l));
  CHECK(r.stats.kernel("rs5_expand")->per_array.count("out_rank") == 0);
  CHECK(r.stats.kernel("rs5_expand")->per_array.at("succ").writes == 3000);
}
