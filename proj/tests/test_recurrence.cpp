#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/induction.hpp"
#include "shiftlab/recurrence.hpp"

using namespace shiftlab;

namespace {

const double kPi = 3.14159265358979323846;

LoopSystem renewal(double c) {
  LoopSystem ls;
  ls.base = {"0"};
  LoopTail t;
  t.kind = LoopTail::Kind::polynomial;
  t.start = 1;
  t.sequence = SequenceTail::polynomial(c, 2.0);
  ls.tails = {t};
  return ls;
}

LoopSystem explicit_loops(std::vector<std::pair<std::size_t, double>> loops) {
  LoopSystem ls;
  ls.base = {"v"};
  for (auto [len, w] : loops) {
    Loop l;
    l.length = len;
    l.log_weight = w;
    l.exact_log_weight.reset();
    ls.loops.push_back(l);
  }
  ls.tails = {LoopTail::zero()};
  return ls;
}

}  // namespace

TEST_SUITE("recurrence") {
  TEST_CASE("golden mean induced at 0 is SPR") {
    auto rc = recurrence_classify(explicit_loops({{1, 0.0}, {2, 0.0}}));
    CHECK(rc.verdict == Recurrence::spr);
    CHECK(rc.radius == std::numeric_limits<double>::infinity());
    REQUIRE(rc.root);
    CHECK(rc.root->contains(2 / (1 + std::sqrt(5.0))));
    CHECK(rc.root->width() < 1e-11);
    CHECK(to_string(rc.verdict) == "SPR");
  }

  TEST_CASE("renewal systems") {
    auto null = recurrence_classify(renewal(6 / (kPi * kPi)));
    CHECK(null.verdict == Recurrence::null_recurrent);
    CHECK(null.radius == 1.0);
    CHECK(null.f_at_radius.lo <= 1.0 + 1e-9);
    CHECK(null.f_at_radius.hi >= 1.0 - 1e-9);
    CHECK(null.df_at_radius.lo == std::numeric_limits<double>::infinity());

    auto tr = recurrence_classify(renewal(3 / (kPi * kPi)));
    CHECK(tr.verdict == Recurrence::transient);
    CHECK(tr.f_at_radius.hi < 1.0);
    CHECK(tr.f_at_radius.contains(0.5));
  }

  TEST_CASE("positive recurrent without SPR") {
    // w_n = c / n^3 with F(1) = 1: F'(1) = c zeta(2) < inf, no root inside.
    const double zeta3 = 1.2020569031595942;
    LoopSystem ls = renewal(1 / zeta3);
    ls.tails[0].sequence = SequenceTail::polynomial(1 / zeta3, 3.0);
    auto rc = recurrence_classify(ls);
    CHECK(rc.verdict == Recurrence::positive_recurrent);
    CHECK(rc.df_at_radius.finite());
    CHECK(rc.df_at_radius.contains(1.6449340668482264 / zeta3));
  }

  TEST_CASE("a single weighted loop") {
    // F(z) = z/2 is entire with root 2, so lambda = 1/2.
    auto rc = recurrence_classify(explicit_loops({{1, std::log(0.5)}}));
    CHECK(rc.verdict == Recurrence::spr);
    REQUIRE(rc.lambda);
    CHECK(rc.lambda->contains(0.5));
  }

  TEST_CASE("geometric tail") {
    // w_n = 2^-n for n >= 1: F(z) = z / (2 - z), R = 2, F(R) = inf, root z = 1.
    LoopSystem ls;
    ls.base = {"0"};
    LoopTail t;
    t.kind = LoopTail::Kind::geometric;
    t.start = 1;
    t.sequence = SequenceTail::geometric(1.0, 0.5);
    ls.tails = {t};
    auto rc = recurrence_classify(ls);
    CHECK(rc.verdict == Recurrence::spr);
    CHECK(rc.radius == doctest::Approx(2.0));
    REQUIRE(rc.root);
    CHECK(rc.root->contains(1.0));
    CHECK(first_return_series(ls, 1.0).contains(1.0));
    CHECK(first_return_derivative(ls, 1.0).contains(2.0));
  }

  TEST_CASE("two-vertex systems are rejected") {
    LoopSystem ls;
    ls.base = {"a", "b"};
    ls.tails.assign(4, LoopTail::zero());
    Loop l;
    ls.loops = {l};
    CHECK_THROWS_AS(recurrence_classify(ls), InputError);
  }

  TEST_CASE("induced golden mean at 1 uses an exact transfer tail") {
    const auto gm = oracle::golden_mean();
    auto ind = induce(gm, {1}, {1}, 6);
    auto rc = recurrence_classify(ind.loops);
    CHECK(rc.verdict == Recurrence::spr);
    CHECK(rc.radius == doctest::Approx(1.0));
    REQUIRE(rc.lambda);
    CHECK(std::abs(std::log(rc.lambda->mid()) - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-9);
  }
}
