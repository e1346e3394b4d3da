#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "pramlab/core/edge_graph.hpp"
#include "pramlab/core/successor_list.hpp"
#include "pramlab/gen/generators.hpp"
#include "pramlab/gen/kiss.hpp"

using namespace pramlab;
using namespace pramlab::gen;

TEST_CASE("KISS matches an independent transcription") {
  KissState s;
  oracles::ReferenceKiss ref;
  for (int i = 0; i < 100000; ++i) REQUIRE(kiss_next(s) == ref.next());

  KissState s2 = kiss_state(1, 2, 3, 4);
  oracles::ReferenceKiss ref2;
  ref2.x = 1;
  ref2.y = 2;
  ref2.z = 3;
  ref2.c = 4;
  for (int i = 0; i < 1000; ++i) REQUIRE(kiss_next(s2) == ref2.next());
}

TEST_CASE("KISS published check value after 10^8 draws") {
  KissState s;
  std::uint64_t v = 0;
  for (int i = 0; i < 100000000; ++i) v = kiss_next(s);
  CHECK(v == 1666297717051644203ULL);
}

TEST_CASE("degenerate KISS components are replaced") {
  const KissState d;
  CHECK(kiss_state(5, 0, 7, 9).y == d.y);
  auto a = kiss_state(0, 1, 1, 0);
  CHECK(a.x == d.x);
  CHECK(a.c == d.c);
  auto b = kiss_state(~0ULL, 1, 1, 1ULL << 58);
  CHECK(b.x == d.x);
  CHECK(kiss_state(5, 6, 7, 8).x == 5);
}

TEST_CASE("seeding is deterministic and streams differ") {
  Kiss a(42), b(42), c(43);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 100; ++i) {
    va.push_back(a());
    vb.push_back(b());
    vc.push_back(c());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK_FALSE(kiss_stream(42, 0) == kiss_stream(42, 1));
  CHECK(kiss_stream(42, 3) == kiss_stream(42, 3));
}

TEST_CASE("KISS outputs are roughly uniform") {
  Kiss rng(2024);
  std::vector<double> count(256, 0);
  const int draws = 1 << 20;
  for (int i = 0; i < draws; ++i) count[rng() >> 56] += 1;
  double chi = 0;
  const double expect = draws / 256.0;
  for (double c : count) chi += (c - expect) * (c - expect) / expect;
  // 255 degrees of freedom; 330.5 is the 0.999 quantile
  CHECK(chi < 330.5);

  std::vector<double> low(10, 0);
  for (int i = 0; i < 100000; ++i) low[rng.below(10)] += 1;
  chi = 0;
  for (double c : low) chi += (c - 10000) * (c - 10000) / 10000;
  CHECK(chi < 27.9);  // 9 dof, 0.999
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("gen_list produces valid lists headed at 0") {
  for (std::uint32_t n = 1; n <= 1000; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto l = gen_list(n, seed);
      REQUIRE(l.size() == n);
      REQUIRE_FALSE(validate_list(l).has_value());
      REQUIRE(l.head == 0);
    }
  }
  CHECK(gen_list(5000, 9).succ == gen_list(5000, 9).succ);
  CHECK(gen_list(5000, 9).succ != gen_list(5000, 10).succ);
}

TEST_CASE("gen_list order is unbiased for small n") {
  // all 3! orders of nodes 1..3 after the head should appear about equally
  std::map<std::vector<std::uint32_t>, int> seen;
  for (std::uint64_t seed = 0; seed < 6000; ++seed) {
    seen[chain_order(gen_list(4, seed))]++;
  }
  CHECK(seen.size() == 6);
  for (const auto& [order, c] : seen) {
    CHECK(order.front() == 0);
    CHECK(c > 850);
    CHECK(c < 1150);
  }
}

TEST_CASE("tree graphs") {
  for (std::uint32_t k : {1u, 2u, 3u, 10u}) {
    for (std::uint32_t n : {1u, 2u, 10u, 999u, 25000u}) {
      const auto g = gen_tree_graph(n, k, 7 + n);
      const auto t = default_tree_count(n);
      REQUIRE(g.n == n);
      REQUIRE(g.m() == n - t);
      REQUIRE_NOTHROW(require_valid_graph(g));
      REQUIRE(count_components(seq_components(g)) == t);
      std::vector<std::uint32_t> deg(n, 0);
      for (const auto& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
      }
      // k children plus one parent at most
      REQUIRE(*std::max_element(deg.begin(), deg.end()) <= k + 1);
    }
  }
  CHECK(default_tree_count(9999) == 1);
  CHECK(default_tree_count(100000) == 10);
  const auto forest = gen_tree_graph(1000, 2, 3, 5);
  CHECK(count_components(seq_components(forest)) == 5);
  CHECK(forest.m() == 995);
}

TEST_CASE("random graphs") {
  CHECK(edges_for_density(1000, 0.01) == 4995);
  CHECK(edges_for_density(4, 1.0) == 6);
  const auto full = gen_random_graph(4, 1.0, 1);
  CHECK(full.m() == 6);
  for (double d : {0.001, 0.01, 0.3, 0.9}) {
    const auto g = gen_random_graph(300, d, 11);
    REQUIRE(g.m() == edges_for_density(300, d));
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& e : g.edges) {
      REQUIRE(e.u != e.v);
      REQUIRE(e.u < 300);
      REQUIRE(e.v < 300);
      REQUIRE(seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second);
    }
  }
  CHECK_THROWS_AS(gen_random_graph_m(4, 7, 1), std::invalid_argument);
  CHECK(gen_random_graph_m(4, 0, 1).m() == 0);
  CHECK_THROWS_AS(gen_random_graph(10, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_graph(10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("random graph edges are spread over all pairs") {
  // n=5 has 10 possible edges; with m=1 each should be drawn about equally
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> hits;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto e = gen_random_graph_m(5, 1, seed).edges[0];
    hits[{std::min(e.u, e.v), std::max(e.u, e.v)}]++;
  }
  CHECK(hits.size() == 10);
  for (const auto& [pair, c] : hits) {
    CHECK(c > 850);
    CHECK(c < 1150);
  }
}
