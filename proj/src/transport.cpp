#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "decode.hpp"
#include "shiftlab/codes.hpp"
#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

void require_full_support(const MarkovMeasure& mu) {
  const auto hb = higher_block(mu.graph, mu.order);
  for (Eigen::Index i = 0; i < mu.stationary.size(); ++i)
    if (!(mu.stationary[i] > 0.0)) throw InputError("measure is not fully supported");
  for (const auto& [u, v] : hb.graph.edges())
    if (!(mu.transition(u, v) > 0.0)) throw InputError("measure is not fully supported");
}

// Order-k Markov measure on g with the given (k+1)-block weights.
MarkovMeasure markov_fit(const FiniteGraph& g, unsigned k, const std::map<Word, double>& blocks) {
  const auto hb = higher_block(g, k);
  const auto n = static_cast<Eigen::Index>(hb.blocks.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : hb.graph.edges()) {
    Word w = hb.blocks[u];
    w.push_back(hb.blocks[v].back());
    auto it = blocks.find(w);
    if (it != blocks.end()) p(u, v) = it->second;
  }
  for (Eigen::Index u = 0; u < n; ++u) {
    const double s = p.row(u).sum();
    if (s > 0.0) {
      p.row(u) /= s;
    } else {
      // A block of weight zero: any stochastic row on its successors keeps
      // it out of the stationary support.
      const auto& succ = hb.graph.successors(static_cast<Symbol>(u));
      for (Symbol v : succ) p(u, v) = 1.0 / static_cast<double>(succ.size());
    }
  }
  return make_markov_measure(g, k, std::move(p));
}

// Draws x_0 .. x_{len-1} from a stationary Markov measure.
Word sample_orbit(const MarkovMeasure& mu, std::size_t len, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](auto weight, Eigen::Index count) {
    double u = unit(rng);
    Eigen::Index last = 0;
    for (Eigen::Index i = 0; i < count; ++i) {
      const double w = weight(i);
      if (w <= 0.0) continue;
      last = i;
      if (u < w) return i;
      u -= w;
    }
    return last;
  };
  const auto n = mu.stationary.size();
  auto state = draw([&](Eigen::Index i) { return mu.stationary[i]; }, n);
  Word x = mu.states[static_cast<std::size_t>(state)];
  while (x.size() < len) {
    state = draw([&](Eigen::Index j) { return mu.transition(state, j); }, n);
    x.push_back(mu.states[static_cast<std::size_t>(state)].back());
  }
  x.resize(len);
  return x;
}

MarkovMeasure fit_from_path(const FiniteGraph& g, unsigned k, const Word& t, std::size_t from, std::size_t to) {
  std::map<Word, double> counts;
  for (std::size_t i = from; i + k + 1 <= to; ++i)
    counts[Word(t.begin() + static_cast<long>(i), t.begin() + static_cast<long>(i + k + 1))] += 1.0;
  return markov_fit(g, k, counts);
}

}  // namespace

TransportResult transport_measure(const AlmostIsomorphism& ai, const MarkovMeasure& mu, unsigned k,
                                  const TransportOptions& options) {
  if (!(mu.graph == ai.s())) throw InputError("measure is not defined over S");
  if (k < 1) throw InputError("output order must be at least 1");
  require_full_support(mu);
  TransportResult out;
  out.entropy_source = measure_entropy(mu);

  if (ai.conjugacy() && !options.force_sampling) {
    // t_i = Phi_T(psi_S(x[i-a, i+b])): push the (k+1)-block marginals forward.
    const auto& inv = *ai.inverse_s;
    const unsigned a = inv.memory;
    const unsigned b = inv.anticipation;
    const std::size_t span = a + k + 1 + b;
    const std::size_t len = std::max<std::size_t>(span, mu.order);
    std::map<Word, double> blocks;
    for (const auto& x : mu.graph.words(len)) {
      const double p = mu.probability(x);
      if (p <= 0.0) continue;
      Word t;
      for (std::size_t i = 0; i <= k; ++i) {
        auto it = inv.table.find(Word(x.begin() + static_cast<long>(i), x.begin() + static_cast<long>(i + a + b + 1)));
        if (it == inv.table.end()) throw InputError("S-word outside the image of the common shift");
        t.push_back(ai.to_t.map[it->second]);
      }
      blocks[t] += p;
    }
    out.measure = markov_fit(ai.t(), k, blocks);
    std::map<Word, double> marginal;
    for (const auto& [t, p] : blocks) marginal[Word(t.begin(), t.end() - 1)] += p;
    double tv = 0.0;
    for (const auto& w : ai.t().words(k)) {
      auto it = marginal.find(w);
      tv += std::abs(out.measure.probability(w) - (it == marginal.end() ? 0.0 : it->second));
    }
    out.block_tv = 0.5 * tv;
    out.closed_form = true;
    out.entropy_target = measure_entropy(out.measure);
    out.entropy_gap = std::abs(out.entropy_target - out.entropy_source);
    return out;
  }

  if (!options.seed) throw InputError("sampling transport needs an explicit seed");
  if (options.batches < 2) throw InputError("sampling transport needs at least two batches");
  out.seed = options.seed;
  out.samples = options.samples;
  std::mt19937_64 rng(*options.seed);
  const Word x = sample_orbit(mu, options.samples, rng);

  // Greedy chain of occurrences o_0 < o_1 < ... with gaps >= |W|; the
  // windows [o_j + I, o_{j+1} + I) tile the decoded stretch.
  const auto& w = ai.magic_s.word;
  const long I = ai.magic_s.I;
  std::vector<long> chain;
  for (std::size_t i = 0; i + w.size() <= x.size(); ++i) {
    if (!chain.empty() && static_cast<long>(i) < chain.back() + static_cast<long>(w.size())) continue;
    if (std::equal(w.begin(), w.end(), x.begin() + static_cast<long>(i))) chain.push_back(static_cast<long>(i));
  }
  detail::MagicDecoder decoder(ai.to_s, w, I);
  Word t;
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    const Word c(x.begin() + chain[j] + static_cast<long>(w.size()), x.begin() + chain[j + 1]);
    for (Symbol s : decoder.segment(c)) t.push_back(ai.to_t.map[s]);
  }
  if (t.size() < options.batches * (k + 2)) throw InputError("sample budget too small to decode any blocks");
  out.decoded = t.size();
  out.measure = fit_from_path(ai.t(), k, t, 0, t.size());
  out.entropy_target = measure_entropy(out.measure);
  out.entropy_gap = std::abs(out.entropy_target - out.entropy_source);

  std::vector<double> batch;
  const std::size_t size = t.size() / options.batches;
  for (std::size_t j = 0; j < options.batches; ++j)
    batch.push_back(measure_entropy(fit_from_path(ai.t(), k, t, j * size, (j + 1) * size)));
  double mean = 0.0;
  for (double h : batch) mean += h;
  mean /= static_cast<double>(batch.size());
  double var = 0.0;
  for (double h : batch) var += (h - mean) * (h - mean);
  var /= static_cast<double>(batch.size() - 1);
  out.entropy_halfwidth = 1.96 * std::sqrt(var / static_cast<double>(batch.size()));
  return out;
}

CorrespondenceReport verify_correspondence(const AlmostIsomorphism& ai, const FiniteRangePotential& f,
                                           const FiniteRangePotential& g, std::size_t n_max,
                                           const CorrespondenceOptions& options) {
  if (!(f.graph() == ai.s())) throw InputError("f is not defined over S");
  if (!(g.graph() == ai.t())) throw InputError("g is not defined over T");
  CorrespondenceReport rep;
  const auto& w = ai.magic_s.word;

  auto compare = [&](const EventuallyPeriodicPoint& x, long from, long to) {
    if (!rep.potentials_match) return;
    const auto y = gamma_on_point(ai, x);
    ++rep.points_checked;
    for (long i = from; i < to; ++i) {
      const auto fi = f.weight(x.window(i - f.left_range(), i + f.right_range()));
      const auto gi = g.weight(y.window(i - g.left_range(), i + g.right_range()));
      const bool same = fi.exact && gi.exact ? *fi.exact == *gi.exact : std::abs(fi.value - gi.value) <= 1e-12;
      rep.max_defect = std::max(rep.max_defect, std::abs(fi.value - gi.value));
      if (!same) {
        rep.potentials_match = false;
        rep.witness = x;
        rep.witness_index = i;
        return;
      }
    }
  };

  std::vector<Word> tails;
  for (std::size_t p = 1; p <= n_max; ++p) {
    for_each_periodic(ai.s(), p, {}, [&](const Word& u) {
      if (!occurs_cyclically(u, w)) return;
      compare(EventuallyPeriodicPoint::periodic(u), 0, static_cast<long>(p));
      if (p <= 4) tails.push_back(u);
    });
  }
  // Heteroclinic points u^inf . core . v^inf joining short periodic orbits.
  for (const auto& u : tails) {
    for (const auto& v : tails) {
      if (u == v) continue;
      // Shortest core joining u's last symbol to v's first.
      std::vector<long> prev(ai.s().vertex_count(), -2);
      std::vector<Symbol> queue;
      for (Symbol s : ai.s().successors(u.back())) {
        if (prev[s] == -2) prev[s] = -1, queue.push_back(s);
      }
      std::optional<Word> core;
      if (ai.s().has_edge(u.back(), v.front())) core = Word{};
      for (std::size_t q = 0; q < queue.size() && !core; ++q) {
        const Symbol s = queue[q];
        if (ai.s().has_edge(s, v.front())) {
          Word c;
          for (long at = s; at >= 0; at = prev[static_cast<std::size_t>(at)]) c.push_back(static_cast<Symbol>(at));
          std::reverse(c.begin(), c.end());
          core = std::move(c);
          break;
        }
        for (Symbol t : ai.s().successors(s))
          if (prev[t] == -2) prev[t] = s, queue.push_back(t);
      }
      if (!core) continue;
      const EventuallyPeriodicPoint x{u, *core, v, 0};
      const long margin = static_cast<long>(u.size() + v.size() + 2 * w.size()) + 4;
      compare(x, -margin, static_cast<long>(core->size()) + margin);
    }
  }

  rep.pressure_s = pressure_spectral(ai.s(), f);
  rep.pressure_t = pressure_spectral(ai.t(), g);
  rep.pressure_gap = std::abs(rep.pressure_s.value - rep.pressure_t.value);
  rep.pressures_match = rep.pressure_gap <= rep.pressure_s.error + rep.pressure_t.error + 1e-9;

  const auto mu_f = equilibrium_measure(ai.s(), f);
  const auto mu_g = equilibrium_measure(ai.t(), g);
  const auto moved = transport_measure(ai, mu_f, options.order, options.transport);
  rep.closed_form = moved.closed_form;
  const std::size_t len = std::max<std::size_t>({options.order, mu_g.order, moved.measure.order});
  for (const auto& b : ai.t().words(len))
    rep.measure_gap = std::max(rep.measure_gap, std::abs(moved.measure.probability(b) - mu_g.probability(b)));
  const double tol = moved.closed_form ? 1e-9 : 2e-2;
  rep.measures_match = rep.measure_gap <= tol;
  return rep;
}

}  // namespace shiftlab
