#include <random>

#include "cchain/core/error.hpp"
#include "cchain/graph/graph.hpp"
#include "doctest.h"
#include "oracles/graphs.hpp"

using namespace cchain;

namespace {

CongruenceEdge edge(const std::string& a, const std::string& b, u64 ell, Theorem t = Theorem::MLT1) {
  CongruenceEdge e;
  e.left = a;
  e.right = b;
  e.ell = ell;
  e.status = CongruenceStatus::Certified;
  e.mlt.theorem = t;
  return e;
}

}  // namespace

TEST_CASE("components examples") {
  CongruenceGraph g;
  g.nodes = {"a", "b", "c", "d"};
  CHECK(components(g).size() == 4);
  g.edges = {edge("a", "b", 3), edge("b", "c", 5)};
  auto blocks = components(g);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<std::string>{"a", "b", "c"});
  CHECK(blocks[1] == std::vector<std::string>{"d"});
}

TEST_CASE("chain search basics") {
  CongruenceGraph g;
  g.nodes = {"a", "b", "c", "d", "e"};
  g.edges = {edge("a", "b", 7), edge("a", "c", 3), edge("b", "d", 2), edge("c", "d", 2, Theorem::None)};
  CHECK(chain_search(g, "a", "a", true)->empty());
  CHECK_FALSE(chain_search(g, "a", "e", false).has_value());
  CHECK_THROWS_AS(chain_search(g, "a", "zz", false), DomainError);
  // two shortest routes to d; the one leaving a at the smaller ell wins
  auto p = chain_search(g, "a", "d", false);
  REQUIRE(p->size() == 2);
  CHECK(p->front().ell == 3);
  auto q = chain_search(g, "a", "d", true);
  REQUIRE(q->size() == 2);
  CHECK(q->front().ell == 7);
}

TEST_CASE("graph routines agree with brute force on random graphs") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 150; ++i) {
    auto g = oracle::random_graph(rng);
    CAPTURE(i);
    CHECK(oracle::graph_mismatches(g) == 0);
  }
}

TEST_CASE("delta and f11 are joined by one MLT1 edge") {
  std::vector<const NewformClass*> classes{&find_class("delta"), &find_class("f11")};
  auto orbits = class_orbit_set(classes, 13);
  auto g = build_graph(orbits, primes_up_to(13));
  CHECK(g.nodes == std::vector<std::string>{"1.12.0", "11.2.0"});
  CHECK(components(g).size() == 1);
  auto path = chain_search(g, "1.12.0", "11.2.0", true);
  REQUIRE(path.has_value());
  REQUIRE(path->size() == 1);
  CHECK(path->front().ell == 11);
  CHECK(path->front().mlt.theorem == Theorem::MLT1);
  CHECK(path->front().mlt.count(CheckStatus::Fail) == 0);
}

TEST_CASE("mazur report examples") {
  auto r11 = mazur_report(11, 2, 13);
  CHECK(r11.connected);
  CHECK(r11.graph.nodes == std::vector<std::string>{"11.2.0"});
  auto r22 = mazur_report(22, 2, 13);
  CHECK(r22.connected);
  CHECK(r22.graph.nodes == std::vector<std::string>{"11.2.0"});
  auto r37 = mazur_report(37, 2, 50);
  CHECK(r37.connected);
  REQUIRE(r37.graph.nodes.size() == 2);
  // mlt_only paths use only gated edges
  for (const auto& e : r37.graph.edges) CHECK(e.status == CongruenceStatus::Certified);
}

TEST_CASE("extending the prime range only merges blocks") {
  for (u64 N : {33, 35, 39, 45, 67}) {
    auto small = mazur_report(N, 2, 3);
    auto large = mazur_report(N, 2, 13);
    CHECK(small.graph.nodes == large.graph.nodes);
    // every small block sits inside one large block
    for (const auto& b : small.components) {
      int hits = 0;
      for (const auto& c : large.components)
        if (std::find(c.begin(), c.end(), b.front()) != c.end()) {
          ++hits;
          for (const auto& s : b) CHECK(std::find(c.begin(), c.end(), s) != c.end());
        }
      CHECK(hits == 1);
    }
    CHECK(large.components.size() <= small.components.size());
  }
}
