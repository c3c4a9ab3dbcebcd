// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "shiftlab/codes.hpp"
#include "shiftlab/induction.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/recurrence.hpp"
#include "shiftlab/thermo.hpp"

using namespace shiftlab;

namespace {

constexpr double kGoldenTol = 1e-9;
constexpr double kRestrictionTol = 1e-6;
constexpr double kMaximalityTol = 1e-9;
constexpr double kStochasticTol = 1e-12;
constexpr double kCorrespondenceTol = 1e-9;
constexpr double kSampledEntropyTol = 0.01;
constexpr double kOracleSeconds = 10.0;
constexpr double kClassifySeconds = 5.0;
constexpr std::uint64_t kSeed = 20240917;
constexpr std::uint64_t kTransportSeed = 42;

const double kLogPhi = std::log((1 + std::sqrt(5.0)) / 2);
const std::filesystem::path kFixtures = SHIFTLAB_FIXTURES;

struct Fixture {
  std::string name;
  FiniteGraph graph;
  FiniteRangePotential potential;
};

FiniteGraph load_graph(const std::string& file) { return io::graph_from_json(io::read_file(kFixtures / file)).graph; }

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  const auto full = load_graph("full2.json");
  const auto gm = load_graph("gm.json");
  auto pot = [](const std::string& file, const FiniteGraph& g) {
    return io::potential_from_json(io::read_file(kFixtures / file), g).potential;
  };
  out.push_back({"full2/zero", full, pot("zero.json", full)});
  out.push_back({"full2/bernoulli", full, pot("bernoulli.json", full)});
  out.push_back({"gm/zero", gm, pot("zero.json", gm)});
  out.push_back({"gm/rational", gm, pot("gm-rational.json", gm)});
  out.push_back({"gm/pair", gm, pot("gm-pair.json", gm)});
  // a two-sided range-3 potential exercises the Bowen reduction
  out.push_back({"gm/two-sided", gm, FiniteRangePotential::from_function(gm, 1, 2, [](const Word& w) {
                   return Weight::of(Rational(static_cast<long>(w[0]) - 2 * static_cast<long>(w[1] * w[2]) + 1, 3));
                 })});
  return out;
}

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("criterion %d %s: %s (%s)\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int id, const std::string& title, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  std::vector<FiniteGraph> graphs{oracle::full2(), oracle::golden_mean()};
  for (int i = 0; i < 20; ++i) graphs.push_back(oracle::random_irreducible(rng, 8));
  std::size_t compared = 0, mismatches = 0;
  for (const auto& g : graphs) {
    const auto w = oracle::random_vertex_weights(rng, g);
    const auto pw = oracle::powers(oracle::weighted_matrix(g, w), 10);
    const auto t = partition_function(g, oracle::range_one(g, w), {}, 10);
    for (std::size_t n = 1; n <= 10; ++n) {
      ++compared;
      if (t.size() < n || !t.at(n).exact || *t.at(n).exact != oracle::trace(pw[n - 1])) ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  report(1, "exact Z_n oracle", mismatches == 0 && secs < kOracleSeconds,
         std::to_string(graphs.size()) + " graphs, " + std::to_string(compared) + " values, " +
             std::to_string(mismatches) + " mismatches, " + fmt(secs) + " s");
}

void criterion2() {
  double worst_slack = -1e300;
  std::string worst;
  bool ok = true;
  for (const auto& fx : fixtures()) {
    const auto s = pressure_spectral(fx.graph, fx.potential);
    const auto t = pressure_from_table(partition_function(fx.graph, fx.potential, {}, 18), 1);
    const double gap = std::abs(s.value - t.value), bound = s.error + t.error;
    if (gap > bound) ok = false;
    if (gap - bound > worst_slack) worst_slack = gap - bound, worst = fx.name + " gap " + fmt(gap) + " bound " + fmt(bound);
  }
  const auto gm = oracle::golden_mean();
  const double golden = std::abs(pressure_spectral(gm, FiniteRangePotential::zero(gm)).value - kLogPhi);
  ok = ok && golden <= kGoldenTol;
  report(2, "pressure consistency", ok, "tightest " + worst + "; |P(GM) - log phi| = " + fmt(golden));
}

void criterion3() {
  const auto gm = oracle::golden_mean();
  bool ok = true;
  std::string detail;
  for (Symbol v : {0u, 1u}) {
    const auto rc = recurrence_classify(induce(gm, {v}, {v}, 10).loops);
    const double err = rc.lambda ? std::abs(std::log(rc.lambda->mid()) - kLogPhi) : INFINITY;
    ok = ok && rc.verdict == Recurrence::spr && err <= kRestrictionTol;
    detail += std::string(v ? "; " : "") + "at " + gm.format({v}) + ": " + to_string(rc.verdict) + ", |log lambda - log phi| = " + fmt(err);
  }
  report(3, "restriction invariance", ok, detail);
}

void criterion4() {
  std::size_t cases = 0, failed = 0;
  auto check = [&](const FiniteGraph& g, const FiniteRangePotential& f, const Word& w) {
    ++cases;
    const auto r = verify_zn_coincidence(g, f, induce(g, w, w, 10), 10);
    bool exact = r.rows.size() == 10;
    for (const auto& row : r.rows) exact = exact && row.left_exact && row.right_exact && *row.left_exact == *row.right_exact;
    if (!r.holds || !exact) ++failed;
  };
  for (const auto& fx : fixtures()) {
    if (!fx.potential.is_exact()) continue;
    // source words must cover the potential window for the loop weights to be well defined
    for (const auto& w : fx.graph.words(std::max<std::size_t>(1, fx.potential.window() - 1)))
      check(fx.graph, fx.potential, w);
  }
  std::mt19937_64 rng(kSeed + 4);
  for (int i = 0; i < 20; ++i) {
    const auto g = oracle::random_irreducible(rng, 8);
    const auto f = oracle::random_potential(rng, g, 0, 1 + i % 2);
    check(g, f, oracle::random_word(rng, g, 1 + i % 2));
  }
  report(4, "Z_n coincidence", failed == 0,
         std::to_string(cases) + " (graph, potential, word) cases up to n = 10, " + std::to_string(failed) + " failed");
}

void criterion5() {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  bool ok = true;
  double worst_excess = -INFINITY, worst_defect = 0.0;
  for (const auto& fx : fixtures()) {
    const auto mu = equilibrium_measure(fx.graph, fx.potential);
    worst_defect = std::max({worst_defect, mu.row_defect(), mu.stationarity_defect()});
    const double top = measure_pressure(mu, fx.potential);
    for (int k = 0; k < 200; ++k) {
      // random stochastic matrix on the same support, mixed with mu to stay near the optimum half the time
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(mu.transition.rows(), mu.transition.cols());
      for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j)
          if (mu.transition(i, j) > 0) p(i, j) = unit(rng);
        p.row(i) /= p.row(i).sum();
      }
      const double t = k % 2 ? std::pow(unit(rng), 4) : 1.0;
      p = t * p + (1 - t) * mu.transition;
      for (Eigen::Index i = 0; i < p.rows(); ++i) p.row(i) /= p.row(i).sum();
      const auto nu = make_markov_measure(fx.graph, mu.order, p);
      const double excess = measure_pressure(nu, fx.potential) - top;
      worst_excess = std::max(worst_excess, excess);
      if (excess > kMaximalityTol) ok = false;
    }
  }
  ok = ok && worst_defect <= kStochasticTol;
  report(5, "equilibrium maximality", ok,
         "200 perturbations per fixture, max excess " + fmt(worst_excess) + ", max defect " + fmt(worst_defect));
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto null = recurrence_classify(io::loops_from_json(io::read_file(kFixtures / "renewal-6pi2.json")));
  const auto trans = recurrence_classify(io::loops_from_json(io::read_file(kFixtures / "renewal-3pi2.json")));
  const auto gm = oracle::golden_mean();
  bool spr_ok = true;
  for (Symbol v : {0u, 1u}) {
    const auto rc = recurrence_classify(induce(gm, {v}, {v}, 10).loops);
    const bool bounds = rc.root && rc.f_at_radius.lo > 1 && first_return_series(induce(gm, {v}, {v}, 10).loops, rc.root->lo).hi <= 1 + 1e-9 &&
                        first_return_series(induce(gm, {v}, {v}, 10).loops, rc.root->hi).lo >= 1 - 1e-9;
    spr_ok = spr_ok && rc.verdict == Recurrence::spr && bounds;
  }
  const bool null_ok = null.verdict == Recurrence::null_recurrent && null.f_at_radius.lo <= 1 + 1e-9 &&
                       null.f_at_radius.hi >= 1 - 1e-9 && null.df_at_radius.lo == INFINITY;
  const bool trans_ok = trans.verdict == Recurrence::transient && trans.f_at_radius.hi < 1;
  const double secs = seconds_since(t0);
  report(6, "recurrence classification", null_ok && trans_ok && spr_ok && secs < kClassifySeconds,
         "6/(pi^2 n^2): " + to_string(null.verdict) + " F(1) in [" + fmt(null.f_at_radius.lo) + ", " +
             fmt(null.f_at_radius.hi) + "]; 3/(pi^2 n^2): " + to_string(trans.verdict) + " F(1) <= " +
             fmt(trans.f_at_radius.hi) + "; GM induced: " + (spr_ok ? "SPR" : "not SPR") + "; " + fmt(secs) + " s");
}

void criterion7() {
  const auto gm = oracle::golden_mean();
  const auto full = oracle::full2();
  const auto hb = higher_block(gm, 2);
  const auto label = block_code(hb, gm);
  const auto id_gm = verify_magic(identity_code(gm), {1}, 0, 8);
  const auto id_full = verify_magic(identity_code(full), {0}, 0, 8);
  const auto blocks = verify_magic(label, gm.parse_word("10"), 0, 8);
  const auto collapse = io::code_from_json(io::read_file(kFixtures / "collapse.json"), {kFixtures});
  const auto refuted = verify_magic(collapse, collapse.target.parse_word("a"), 0, 8);
  bool sound = false;
  if (refuted.status == MagicStatus::refuted && refuted.refutation) {
    const auto& r = *refuted.refutation;
    sound = r.x != r.x_prime && apply_code(collapse, r.x) == r.presented &&
            apply_code(collapse, r.x_prime) == r.presented && collapse.source.is_word(r.x) &&
            collapse.source.is_word(r.x_prime) && r.window_x != r.window_x_prime;
    if (r.periodic_x && r.periodic_x_prime)
      sound = sound && *r.periodic_x != *r.periodic_x_prime &&
              apply_code(collapse, PeriodicPoint{*r.periodic_x}).word.size() == r.periodic_x->size();
  }
  const bool certified = id_gm.status == MagicStatus::certified && id_full.status == MagicStatus::certified &&
                         blocks.status == MagicStatus::certified && id_gm.depth_reached == 8 &&
                         blocks.depth_reached == 8;
  report(7, "magic-word suite", certified && sound,
         std::string("identity and 2-block codes ") + (certified ? "certified to depth 8" : "not certified") +
             "; collapse " + to_string(refuted.status) + (sound ? " with a re-checked witness" : " without a sound witness"));
}

void criterion8() {
  const io::Context ctx{kFixtures};
  const auto gm = oracle::golden_mean();
  const auto f = io::potential_from_json(io::read_file(kFixtures / "gm-rational.json"), gm).potential;
  bool ok = true;
  std::string detail;
  for (const char* file : {"gm-self-ai.json", "gm-recode-ai.json"}) {
    const auto ai = io::build_ai(io::ai_from_json(io::read_file(kFixtures / file), ctx));
    const auto g = pushforward_potential(ai, f);
    const auto rep = verify_correspondence(ai, f, g, 10);
    const bool this_ok = rep.potentials_match && rep.closed_form && rep.pressure_gap <= kCorrespondenceTol &&
                         rep.measure_gap <= kCorrespondenceTol;
    ok = ok && this_ok;
    detail += std::string(file) + ": " + std::to_string(rep.points_checked) + " points, pressure gap " +
              fmt(rep.pressure_gap) + ", 2-block gap " + fmt(rep.measure_gap) + "; ";
  }
  const auto ai = io::build_ai(io::ai_from_json(io::read_file(kFixtures / "gm-self-ai.json"), ctx));
  TransportOptions o;
  o.seed = kTransportSeed;
  o.samples = 100000;
  o.force_sampling = true;
  const auto sampled = transport_measure(ai, equilibrium_measure(gm, f), 2, o);
  const double gap = std::abs(sampled.entropy_gap);
  ok = ok && gap <= kSampledEntropyTol;
  detail += "sampled entropy gap " + fmt(gap) + " at seed " + std::to_string(kTransportSeed);
  report(8, "correspondence", ok, detail);
}

void criterion9() {
  std::size_t fixtures_checked = 0, z_failures = 0, words = 0;
  bool identity = true;
  for (const auto& fx : fixtures()) {
    if (!fx.potential.is_exact()) continue;
    ++fixtures_checked;
    const auto r = bowen_reduce(fx.potential);
    const auto cob = verify_coboundary(fx.potential, r);
    identity = identity && cob.holds && cob.exact;
    words += cob.words_checked;
    const auto a = partition_function(fx.graph, fx.potential, {}, 10);
    const auto b = partition_function(fx.graph, r.future, {}, 10);
    for (std::size_t n = 1; n <= 10; ++n)
      if (a.size() < n || b.size() < n || *a.at(n).exact != *b.at(n).exact) ++z_failures;
  }
  report(9, "Bowen reduction", identity && z_failures == 0,
         std::to_string(fixtures_checked) + " exact fixtures, " + std::to_string(z_failures) + " Z_n mismatches, " +
             std::to_string(words) + " words checked for the coboundary identity");
}

}  // namespace

int main() {
  guarded(1, "exact Z_n oracle", criterion1);
  guarded(2, "pressure consistency", criterion2);
  guarded(3, "restriction invariance", criterion3);
  guarded(4, "Z_n coincidence", criterion4);
  guarded(5, "equilibrium maximality", criterion5);
  guarded(6, "recurrence classification", criterion6);
  guarded(7, "magic-word suite", criterion7);
  guarded(8, "correspondence", criterion8);
  guarded(9, "Bowen reduction", criterion9);
  return failures == 0 ? 0 : 1;
}
