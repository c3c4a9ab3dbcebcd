#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/variation.hpp"

using namespace shiftlab;

TEST_SUITE("potentials") {
  TEST_CASE("birkhoff sums along periodic points") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    CHECK(birkhoff_sum(FiniteRangePotential::zero(gm), {{0, 0, 1, 0, 0, 1, 0}}, 7) == 0.0);
    auto x0 = FiniteRangePotential::from_function(full, 0, 1, [](const Word& w) { return Weight::of(w[0]); });
    CHECK(*birkhoff_sum_exact(x0, {{0, 1, 0, 1}}, 4) == 2);
    auto pair = FiniteRangePotential::from_function(
        gm, 0, 2, [](const Word& w) { return Weight::of(w[0] == 0 && w[1] == 0 ? 1 : 0); });
    // 00 occurs at positions 0 and 3 of the cyclic word
    CHECK(*birkhoff_sum_exact(pair, {{0, 0, 1, 0}}, 4) == 2);
    CHECK_THROWS_AS(birkhoff_sum(pair, {{1, 1}}, 2), InputError);
  }

  TEST_CASE("tables reject inadmissible windows and require coverage") {
    const auto gm = oracle::golden_mean();
    CHECK_THROWS_AS(FiniteRangePotential::from_table(gm, 0, 2, {{{1, 1}, Weight::of(1)}}), InputError);
    CHECK_THROWS_AS(FiniteRangePotential::from_table(gm, 0, 1, {{{0}, Weight::of(1)}}), InputError);
    auto f = FiniteRangePotential::from_table(gm, 0, 1, {{{0}, Weight::of(1)}}, Weight::of(Rational(-1, 2)));
    CHECK(f.value({1}) == -0.5);
    CHECK(f.is_exact());
    auto g = FiniteRangePotential::from_table(gm, 0, 1, {{{0}, Weight::approx(0.25)}}, Weight::of(0));
    CHECK_FALSE(g.is_exact());
  }

  TEST_CASE("variation certificates") {
    VariationCertificate geo;
    geo.tail = SequenceTail::geometric(1.0, 0.5);
    auto c = check_variation_certificate(geo);
    CHECK(c.accepted);
    CHECK(c.sum.contains(2.0));
    CHECK(c.sum.width() < 1e-12);

    VariationCertificate poly;
    poly.tail = SequenceTail::polynomial(1.0, 2.0);
    CHECK_FALSE(check_variation_certificate(poly).accepted);

    VariationCertificate zero;
    auto z = check_variation_certificate(zero);
    CHECK(z.accepted);
    CHECK(z.sum.hi == 0.0);
  }

  TEST_CASE("variation lift") {
    VariationCertificate geo;
    geo.tail = SequenceTail::geometric(1.0, 0.5);
    auto lifted = lift_variation(geo, 2, 1);
    for (std::size_t n = 1; n < 20; ++n) CHECK(lifted.omega(n) == doctest::Approx(std::pow(2.0, -double(n + 1))));
    auto same = lift_variation(geo, 0, 0);
    for (std::size_t n = 1; n < 20; ++n) CHECK(same.omega(n) == doctest::Approx(geo.omega(n)));
    auto l3 = lift_variation(geo, 3, 0);
    CHECK(weighted_variation_sum(l3, 1.0, 1).contains(2.0));
    CHECK(weighted_variation_sum(l3, 1.0, 1).hi <= 2.0 + 1e-12);
    CHECK(lift_budget(geo, 3, 0).lo <= 2.0 + 2.0);
  }

  TEST_CASE("bowen reduction of a future-only potential is trivial") {
    std::mt19937_64 rng(3);
    const auto gm = oracle::golden_mean();
    auto f = oracle::random_potential(rng, gm, 0, 2);
    auto r = bowen_reduce(f);
    CHECK(r.future.left_range() == 0);
    for (std::size_t i = 0; i < f.windows().size(); ++i) CHECK(r.future.exact_at(r.future.index(f.windows()[i])) == f.exact_at(i));
    for (std::size_t i = 0; i < r.transfer.windows().size(); ++i) CHECK(r.transfer.exact_at(i) == 0);
  }

  TEST_CASE("bowen reduction of x[-1] x[0] on FULL2") {
    const auto full = oracle::full2();
    auto f = FiniteRangePotential::from_function(full, 1, 1, [](const Word& w) { return Weight::of(w[0] * w[1]); });
    auto r = bowen_reduce(f);
    CHECK(r.future.left_range() == 0);
    CHECK(r.future.right_range() == 2);
    for (const auto& w : full.words(2)) CHECK(r.future.exact_at(r.future.index(w)) == w[0] * w[1]);
    auto check = verify_coboundary(f, r);
    CHECK(check.holds);
    CHECK(check.exact);
    CHECK(check.words_checked == 8);
  }

  TEST_CASE("coboundary identity on random two-sided potentials") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = oracle::random_irreducible(rng, 5);
      const unsigned m = 1 + trial % 2, r = 1 + trial % 3;
      auto f = oracle::random_potential(rng, g, m, r);
      auto red = bowen_reduce(f);
      auto check = verify_coboundary(f, red);
      CHECK(check.holds);
      CHECK(check.exact);
      CHECK(check.words_checked == g.words(f.window() + m).size());
    }
  }
}
