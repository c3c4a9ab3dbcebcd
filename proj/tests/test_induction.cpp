#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/induction.hpp"
#include "shiftlab/recurrence.hpp"

using namespace shiftlab;

namespace {

std::vector<std::pair<std::size_t, std::string>> explicit_loops(const InducedPresentation& ind) {
  std::vector<std::pair<std::size_t, std::string>> out;
  for (const auto& l : ind.loops.loops) out.emplace_back(l.length, ind.ambient.format(*l.label));
  return out;
}

}  // namespace

TEST_SUITE("induction") {
  TEST_CASE("golden mean at 0") {
    auto ind = induce(oracle::golden_mean(), {0}, {0}, 10);
    CHECK(explicit_loops(ind) == std::vector<std::pair<std::size_t, std::string>>{{1, "0"}, {2, "01"}});
    CHECK(ind.loops.tail(0, 0).vanishes());
  }

  TEST_CASE("golden mean at 1") {
    auto ind = induce(oracle::golden_mean(), {1}, {1}, 10);
    auto loops = explicit_loops(ind);
    REQUIRE(loops.size() == 9);
    for (std::size_t k = 2; k <= 10; ++k) CHECK(loops[k - 2] == std::make_pair(k, "1" + std::string(k - 1, '0')));
    CHECK(ind.loops.weight(11) == doctest::Approx(1.0));
    CHECK(ind.loops.weight(30) == doctest::Approx(1.0));
  }

  TEST_CASE("full shift at 0") {
    auto ind = induce(oracle::full2(), {0}, {0}, 10);
    auto loops = explicit_loops(ind);
    REQUIRE(loops.size() == 10);
    for (std::size_t k = 1; k <= 10; ++k) CHECK(loops[k - 1] == std::make_pair(k, "0" + std::string(k - 1, '1')));
  }

  TEST_CASE("input validation") {
    const auto gm = oracle::golden_mean();
    CHECK_THROWS_AS(induce(gm, {1, 1}, {1, 1}, 10), InputError);
    CHECK_THROWS_AS(induce(gm, {0}, {0, 1}, 10), InputError);
    CHECK_THROWS_AS(induce(gm, {0, 1}, {0, 1}, 1), InputError);
  }

  TEST_CASE("lifted weights are Birkhoff sums along labels") {
    const auto gm = oracle::golden_mean();
    auto f = FiniteRangePotential::from_table(gm, 0, 1, {{{0}, Weight::of(Rational(1, 3))}, {{1}, Weight::of(-2)}});
    auto lifted = lift_potential(induce(gm, {0}, {0}, 10), f);
    REQUIRE(lifted.loops.loops.size() == 2);
    CHECK(*lifted.loops.loops[0].exact_log_weight == Rational(1, 3));
    CHECK(*lifted.loops.loops[1].exact_log_weight == Rational(-5, 3));
    auto zero = lift_potential(induce(gm, {0}, {0}, 10), FiniteRangePotential::zero(gm));
    for (const auto& l : zero.loops.loops) CHECK(*l.exact_log_weight == 0);
  }

  TEST_CASE("coincidence examples") {
    const auto gm = oracle::golden_mean();
    const auto zero = FiniteRangePotential::zero(gm);
    auto at1 = verify_zn_coincidence(gm, zero, induce(gm, {1}, {1}, 10), 10);
    CHECK(at1.holds);
    CHECK(at1.rows[3].left == 2);
    CHECK(at1.rows[3].right == 2);
    auto at0 = verify_zn_coincidence(gm, zero, induce(gm, {0}, {0}, 10), 10);
    CHECK(at0.holds);
    CHECK(at0.rows[2].left == 3);
  }

  TEST_CASE("a perturbed loop weight is caught at the first affected n") {
    const auto gm = oracle::golden_mean();
    auto f = FiniteRangePotential::from_table(gm, 0, 1, {{{0}, Weight::of(1)}, {{1}, Weight::of(2)}});
    auto ind = induce(gm, {0}, {0}, 10);
    auto lifted = lift_potential(ind, f).loops;
    lifted.loops[1].exact_log_weight = *lifted.loops[1].exact_log_weight + Rational(1, 7);
    lifted.loops[1].log_weight += 1.0 / 7;
    auto r = verify_zn_coincidence(gm, f, ind, lifted, 8);
    CHECK_FALSE(r.holds);
    REQUIRE(r.first_mismatch);
    CHECK(*r.first_mismatch == 2);
  }

  TEST_CASE("coincidence and injectivity on random triples") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 6; ++trial) {
      const auto g = oracle::random_irreducible(rng, 5);
      const auto f = oracle::random_potential(rng, g, 0, 1 + trial % 2);
      const auto w = oracle::random_word(rng, g, 1 + trial % 2);
      auto ind = induce(g, w, w, 8);
      auto r = verify_zn_coincidence(g, f, ind, 8);
      CHECK(r.holds);
      for (const auto& row : r.rows) CHECK((row.left_exact && row.right_exact));
      CHECK(check_injectivity(ind, 8).injective);
    }
  }

  TEST_CASE("source words from w a w b") {
    const auto gm = oracle::golden_mean();
    auto s = choose_source_words(gm, {1}, {0});
    CHECK(s.W1.size() == s.W2.size());
    CHECK(gm.is_word(s.W1));
    CHECK(gm.is_word(s.W2));
    CHECK(s.L == 1);
    auto ind = induce_from_words(gm, s, 12);
    CHECK_FALSE(ind.direct);
    auto f = FiniteRangePotential::from_table(gm, 0, 2,
                                              {{{0, 0}, Weight::of(Rational(1, 4))}, {{0, 1}, Weight::of(-1)},
                                               {{1, 0}, Weight::of(Rational(2, 3))}});
    auto single = induce_from_words(gm, choose_source_words(gm, {0}, {0}), 12);
    CHECK(verify_zn_coincidence(gm, f, single, 12).holds);
  }

  TEST_CASE("pressure is unchanged by restriction") {
    const auto gm = oracle::golden_mean();
    auto f = FiniteRangePotential::from_table(gm, 0, 1, {{{0}, Weight::of(Rational(1, 3))}, {{1}, Weight::of(Rational(-1, 2))}});
    const double p = pressure_spectral(gm, f).value;
    for (Symbol v : {0u, 1u}) {
      auto rc = recurrence_classify(lift_potential(induce(gm, {v}, {v}, 10), f).loops);
      REQUIRE(rc.lambda);
      CHECK(std::abs(std::log(rc.lambda->mid()) - p) < 1e-6);
    }
  }
}
