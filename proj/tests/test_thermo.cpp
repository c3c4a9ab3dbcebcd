#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/thermo.hpp"

using namespace shiftlab;

namespace {

const double kLogPhi = std::log((1 + std::sqrt(5.0)) / 2);

std::vector<double> values(const PartitionFunctionTable& t) {
  std::vector<double> v;
  for (const auto& e : t.entries) v.push_back(e.value);
  return v;
}

}  // namespace

TEST_SUITE("thermo") {
  TEST_CASE("partition function examples") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    auto t = partition_function(full, FiniteRangePotential::zero(full), {0}, 10);
    REQUIRE(t.size() == 10);
    for (std::size_t n = 1; n <= 10; ++n) CHECK(t.at(n).exact->total_count() == (1u << (n - 1)));
    CHECK(values(partition_function(gm, FiniteRangePotential::zero(gm), {1}, 4)) == std::vector<double>{0, 1, 1, 2});
    CHECK(values(partition_function(gm, FiniteRangePotential::zero(gm), {}, 5)) == std::vector<double>{1, 3, 4, 7, 11});
    CHECK_FALSE(partition_function(gm, FiniteRangePotential::zero(gm), {1, 1}, 4).base_admissible);
  }

  TEST_CASE("partition function equals the symbolic trace on random graphs") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 8; ++trial) {
      const auto g = oracle::random_irreducible(rng, 6);
      const auto w = oracle::random_vertex_weights(rng, g);
      const auto pw = oracle::powers(oracle::weighted_matrix(g, w), 8);
      const auto f = oracle::range_one(g, w);
      const auto t = partition_function(g, f, {}, 8, {100'000'000, 2});
      REQUIRE(t.size() == 8);
      for (std::size_t n = 1; n <= 8; ++n) CHECK(*t.at(n).exact == oracle::trace(pw[n - 1]));
      const auto base = oracle::random_word(rng, g, 2);
      const auto tb = partition_function(g, f, base, 6);
      for (std::size_t n = 1; n <= 6; ++n) CHECK(*tb.at(n).exact == oracle::brute_force_z(g, f, base, n));
    }
  }

  TEST_CASE("longer-range potentials against brute force") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = oracle::random_irreducible(rng, 4);
      const auto f = oracle::random_potential(rng, g, 1, 2);
      const auto t = partition_function(g, f, {}, 7);
      for (std::size_t n = 1; n <= 7; ++n) CHECK(*t.at(n).exact == oracle::brute_force_z(g, f, {}, n));
    }
  }

  TEST_CASE("budget truncates the table") {
    const auto full = oracle::full2();
    EnumerationOptions o;
    o.point_budget = 100;
    auto t = partition_function(full, FiniteRangePotential::zero(full), {}, 12, o);
    CHECK(t.truncated);
    CHECK(t.size() < 12);
  }

  TEST_CASE("spectral pressure") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    CHECK(std::abs(pressure_spectral(full, FiniteRangePotential::zero(full)).value - std::log(2.0)) < 1e-9);
    auto p = pressure_spectral(gm, FiniteRangePotential::zero(gm));
    CHECK(std::abs(p.value - kLogPhi) < 1e-9);
    CHECK(p.error < 1e-9);
    auto f = FiniteRangePotential::from_table(full, 0, 1, {{{0}, Weight::of(0)}, {{1}, Weight::approx(std::log(3.0))}});
    CHECK(std::abs(pressure_spectral(full, f).value - std::log(4.0)) < 1e-9);
  }

  TEST_CASE("pressure from a table") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    auto pf = pressure_from_table(partition_function(full, FiniteRangePotential::zero(full), {0}, 12), 1);
    CHECK(std::abs(pf.value - std::log(2.0)) < 1e-3);
    auto pg = pressure_from_table(partition_function(gm, FiniteRangePotential::zero(gm), {}, 14), 1);
    CHECK(std::abs(pg.value - kLogPhi) < 1e-2);
    CHECK(std::abs(pg.value - kLogPhi) <= pg.error + 1e-9);
    PartitionFunctionTable empty;
    empty.n_max = 8;
    for (std::size_t n = 1; n <= 8; ++n) empty.entries.push_back({n, 0.0, 0.0, ExpSum{}, 0});
    CHECK_THROWS_AS(pressure_from_table(empty, 1), InputError);
  }

  TEST_CASE("pressure along an exhaustion") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    const FiniteGraph loop(Alphabet({"0"}), {{0, 0}});
    auto a = pressure_exhaustion(make_exhaustion({loop, gm}), FiniteRangePotential::zero(gm));
    REQUIRE(a.levels.size() == 2);
    CHECK(std::abs(a.levels[0]) < 1e-12);
    CHECK(std::abs(a.levels[1] - kLogPhi) < 1e-9);
    auto b = pressure_exhaustion(make_exhaustion({gm, full}), FiniteRangePotential::zero(full));
    CHECK(std::abs(b.levels[0] - kLogPhi) < 1e-9);
    CHECK(std::abs(b.value - std::log(2.0)) < 1e-9);
    CHECK(b.monotone);
    auto c = pressure_exhaustion(make_exhaustion({gm, gm}), FiniteRangePotential::zero(gm));
    CHECK(std::abs(c.value - pressure_spectral(gm, FiniteRangePotential::zero(gm)).value) < 1e-12);
    CHECK_FALSE(make_exhaustion({gm, gm}).strictly_nested);
    CHECK_THROWS_AS(make_exhaustion({full, gm}), InputError);
  }

  TEST_CASE("equilibrium measures") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    auto bern = FiniteRangePotential::from_table(
        full, 0, 1, {{{0}, Weight::approx(std::log(0.3))}, {{1}, Weight::approx(std::log(0.7))}});
    auto mu = equilibrium_measure(full, bern);
    CHECK(mu.transition(0, 0) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(mu.transition(1, 1) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(std::abs(pressure_spectral(full, bern).value) < 1e-12);
    CHECK(mu.row_defect() < 1e-12);
    CHECK(mu.stationarity_defect() < 1e-12);

    auto parry = equilibrium_measure(gm, FiniteRangePotential::zero(gm));
    const double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(parry.transition(0, 0) == doctest::Approx(1 / phi).epsilon(1e-12));
    CHECK(parry.transition(0, 1) == doctest::Approx(1 / (phi * phi)).epsilon(1e-12));
    CHECK(std::abs(measure_entropy(parry) - kLogPhi) < 1e-9);

    const FiniteGraph point(Alphabet({"*"}), {{0, 0}});
    auto c = FiniteRangePotential::constant(point, Weight::of(Rational(5, 4)));
    auto delta = equilibrium_measure(point, c);
    CHECK(measure_entropy(delta) == doctest::Approx(0.0));
    CHECK(measure_pressure(delta, c) == doctest::Approx(1.25));
    CHECK(pressure_spectral(point, c).value == doctest::Approx(1.25));
  }

  TEST_CASE("measure entropy and integral") {
    const auto full = oracle::full2();
    Eigen::MatrixXd half = Eigen::MatrixXd::Constant(2, 2, 0.5);
    auto mu = make_markov_measure(full, 1, half);
    CHECK(std::abs(measure_entropy(mu) - std::log(2.0)) < 1e-12);
    CHECK(mu.probability({0, 1, 1}) == doctest::Approx(0.125));
    auto x0 = FiniteRangePotential::from_function(full, 0, 1, [](const Word& w) { return Weight::of(w[0]); });
    CHECK(measure_integral(mu, x0) == doctest::Approx(0.5));
    Eigen::MatrixXd bad(2, 2);
    bad << 0.5, 0.4, 0.5, 0.5;
    CHECK_THROWS_AS(make_markov_measure(full, 1, bad), InputError);
    const auto gm = oracle::golden_mean();
    CHECK_THROWS_AS(make_markov_measure(gm, 1, half), InputError);
  }

  TEST_CASE("positive recurrence witness") {
    const auto full = oracle::full2();
    auto t = partition_function(full, FiniteRangePotential::zero(full), {0}, 12);
    auto stable = positive_recurrence_test(t, std::log(2.0));
    CHECK(stable.trend == RatioTrend::stable);
    CHECK(stable.min_ratio == doctest::Approx(0.5));
    CHECK(stable.max_ratio == doctest::Approx(0.5));
    CHECK_FALSE(stable.disclaimer.empty());
    CHECK(positive_recurrence_test(t, std::log(3.0)).trend == RatioTrend::decaying);
    CHECK(positive_recurrence_test(t, 0.0).trend == RatioTrend::growing);
  }

  TEST_CASE("zeta coefficients") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    auto zf = zeta_series(partition_function(full, FiniteRangePotential::zero(full), {}, 4), 4);
    REQUIRE(zf.exact);
    CHECK(*zf.exact == std::vector<Rational>{1, 2, 4, 8, 16});
    auto zg = zeta_series(partition_function(gm, FiniteRangePotential::zero(gm), {}, 8), 8);
    CHECK(*zg.exact == std::vector<Rational>{1, 1, 2, 3, 5, 8, 13, 21, 34});
    PartitionFunctionTable empty;
    empty.n_max = 4;
    for (std::size_t n = 1; n <= 4; ++n) empty.entries.push_back({n, 0.0, 0.0, ExpSum{}, 0});
    auto ze = zeta_series(empty, 4);
    CHECK(ze.values == std::vector<double>{1, 0, 0, 0, 0});
  }

  TEST_CASE("distortion") {
    const auto full = oracle::full2();
    const auto gm = oracle::golden_mean();
    CHECK(distortion_constant(gm, FiniteRangePotential::zero(gm), {0}, 8).value == 0.0);
    auto f = FiniteRangePotential::from_table(gm, 0, 1, {{{0}, Weight::of(2)}, {{1}, Weight::of(-1)}});
    CHECK(distortion_constant(gm, f, {1}, 8).value == 0.0);
    auto g = FiniteRangePotential::from_table(
        full, 0, 2,
        {{{0, 0}, Weight::of(0)}, {{0, 1}, Weight::of(1)}, {{1, 0}, Weight::of(Rational(1, 2))}, {{1, 1}, Weight::of(3)}});
    auto d = distortion_constant(full, g, {1, 1}, 8);
    CHECK(d.value == doctest::Approx(2.5));
    CHECK(d.value <= g.oscillation());
  }
}
