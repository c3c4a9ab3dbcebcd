#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/graph.hpp"

using namespace shiftlab;

TEST_SUITE("shift_core") {
  TEST_CASE("alphabet parses compact and spaced words") {
    Alphabet a({"0", "1"});
    CHECK(a.compact());
    CHECK(a.parse_word("0110") == Word{0, 1, 1, 0});
    CHECK(a.format({1, 0}) == "10");
    Alphabet b({"00", "01", "10"});
    CHECK_FALSE(b.compact());
    CHECK(b.parse_word("01 10") == Word{1, 2});
    CHECK(b.parse_word("10") == Word{2});
    CHECK(b.format({1, 2}) == "01 10");
    CHECK_THROWS_AS(a.parse_word("2"), InputError);
  }

  TEST_CASE("validation and period") {
    auto full = build_graph({"0", "1"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(full.period == 1);
    auto gm = build_graph({"0", "1"}, {{0, 0}, {0, 1}, {1, 0}});
    CHECK(gm.period == 1);
    CHECK_THROWS_AS(build_graph({"0"}, {{0, 0}, {0, 0}}), InputError);
    auto cycle = irreducible_and_period(FiniteGraph(Alphabet({"0", "1"}), {{0, 1}, {1, 0}}));
    CHECK(cycle.irreducible);
    CHECK(cycle.period == 2);
    CHECK_FALSE(cycle.mixing());
    auto loops = irreducible_and_period(FiniteGraph(Alphabet({"0", "1"}), {{0, 0}, {1, 1}}));
    CHECK_FALSE(loops.irreducible);
  }

  TEST_CASE("non-irreducible input reports its components") {
    try {
      build_graph({"a", "b"}, {{0, 0}, {1, 1}});
      FAIL("expected NotIrreducible");
    } catch (const NotIrreducible& e) {
      CHECK(e.components().size() == 2);
    }
  }

  TEST_CASE("pruning removes vertices without bi-infinite paths") {
    auto b = build_graph({"a", "b", "c"}, {{0, 0}, {0, 1}, {1, 0}, {2, 0}});
    CHECK(b.pruned == std::vector<std::string>{"c"});
    CHECK(b.graph.vertex_count() == 2);
  }

  TEST_CASE("periodic points") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    CHECK(enumerate_periodic(full, 3, {0}).points.size() == 4);
    CHECK(enumerate_periodic(gm, 4, {1}).points.size() == 2);
    CHECK(enumerate_periodic(gm, 1, {1}).points.empty());
    CHECK_FALSE(enumerate_periodic(gm, 3, {1, 1}).prefix_admissible);
    // a prefix longer than the period is matched cyclically
    CHECK(enumerate_periodic(gm, 1, {0, 0, 0}).points.size() == 1);
    CHECK(enumerate_periodic(gm, 2, {0, 1, 0}).points.size() == 1);
    CHECK(enumerate_periodic(gm, 2, {0, 1, 1}).points.empty());
  }

  TEST_CASE("periodic enumeration agrees with brute force on random graphs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = oracle::random_irreducible(rng, 5);
      const auto zero = FiniteRangePotential::zero(g);
      for (std::size_t n = 1; n <= 6; ++n) {
        const auto pts = enumerate_periodic(g, n).points;
        CHECK(pts.size() == oracle::brute_force_z(g, zero, {}, n).total_count());
        CHECK(std::is_sorted(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.word < b.word; }));
      }
    }
  }

  TEST_CASE("higher block graphs") {
    auto hb = higher_block(oracle::golden_mean(), 2);
    CHECK(hb.graph.vertex_count() == 3);
    CHECK(hb.graph.edge_count() == 5);
    auto full = higher_block(oracle::full2(), 2);
    CHECK(full.graph.vertex_count() == 4);
    CHECK(full.graph.edge_count() == 8);
    auto one = higher_block(oracle::golden_mean(), 1);
    CHECK(one.graph == oracle::golden_mean());
  }
}
