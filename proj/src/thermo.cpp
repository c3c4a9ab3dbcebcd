#include "shiftlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "shiftlab/errors.hpp"
#include "shiftlab/parallel.hpp"
#include "shiftlab/perron.hpp"

namespace shiftlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rational weights over a common denominator, so Birkhoff sums along a
// point are int64 additions.
struct ScaledWeights {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;
};

std::optional<ScaledWeights> scale_weights(const FiniteRangePotential& f) {
  if (!f.is_exact()) return std::nullopt;
  BigInt lcm = 1;
  for (std::size_t i = 0; i < f.windows().size(); ++i) {
    const BigInt d = denominator(f.exact_at(i));
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    if (lcm > (BigInt(1) << 31)) return std::nullopt;
  }
  ScaledWeights s;
  s.denominator = lcm.convert_to<std::int64_t>();
  for (std::size_t i = 0; i < f.windows().size(); ++i) {
    const Rational& q = f.exact_at(i);
    const BigInt num = numerator(q) * (lcm / denominator(q));
    if (abs(num) > (BigInt(1) << 40)) return std::nullopt;
    s.numerators.push_back(num.convert_to<std::int64_t>());
  }
  return s;
}

struct BudgetExceeded {};

ZEntry partition_entry(const FiniteGraph& g, const FiniteRangePotential& f, const Word& base,
                       std::size_t n, const std::optional<ScaledWeights>& scaled,
                       std::uint64_t budget) {
  ZEntry e;
  e.n = n;
  std::unordered_map<std::int64_t, std::uint64_t> scaled_terms;
  ExpSum slow_terms;
  CompensatedSum value;
  const bool exact = f.is_exact();
  for_each_periodic(g, n, base, [&](const Word& w) {
    if (++e.points > budget) throw BudgetExceeded{};
    if (scaled) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += scaled->numerators[f.index_cyclic(w, i)];
      ++scaled_terms[s];
    } else if (exact) {
      Rational s = 0;
      for (std::size_t i = 0; i < n; ++i) s += f.exact_at(f.index_cyclic(w, i));
      slow_terms.add(s);
    } else {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += f.values()[f.index_cyclic(w, i)];
      value.add(std::exp(s));
    }
  });
  if (scaled) {
    ExpSum z;
    for (const auto& [num, count] : scaled_terms) z.add(Rational(num, scaled->denominator), count);
    e.exact = std::move(z);
  } else if (exact) {
    e.exact = std::move(slow_terms);
  }
  if (e.exact) {
    e.value = e.exact->value();
    e.error = e.value * kEps * static_cast<double>(e.exact->terms().size() + 2);
  } else {
    e.value = value.value();
    e.error = e.value * kEps * static_cast<double>(4 * n + 8);
  }
  return e;
}

std::vector<std::size_t> composed_inclusion(const Exhaustion& ex, std::size_t level) {
  std::vector<std::size_t> map(ex.levels[level].vertex_count());
  std::iota(map.begin(), map.end(), 0);
  for (std::size_t i = level; i + 1 < ex.levels.size(); ++i)
    for (auto& v : map) v = ex.inclusions[i][v];
  return map;
}

}  // namespace

TransferMatrix transfer_matrix(const FiniteGraph& g, const FiniteRangePotential& f) {
  if (!(f.graph() == g)) throw InputError("potential is defined over a different graph");
  TransferMatrix t;
  t.blocks = higher_block(g, std::max<std::size_t>(1, f.window()));
  const auto n = t.blocks.blocks.size();
  t.log_scale = f.upper_bound();
  t.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& [u, v] : t.blocks.graph.edges())
    t.matrix(u, v) = std::exp(f.value(t.blocks.blocks[u]) - t.log_scale);
  return t;
}

PartitionFunctionTable partition_function(const FiniteGraph& g, const FiniteRangePotential& f,
                                          const Word& base, std::size_t n_max,
                                          const EnumerationOptions& options) {
  if (!(f.graph() == g)) throw InputError("potential is defined over a different graph");
  PartitionFunctionTable t;
  t.base = base;
  t.n_max = n_max;
  if (!g.is_word(base)) {
    t.base_admissible = false;
    return t;
  }
  const auto scaled = scale_weights(f);
  std::vector<std::optional<ZEntry>> slots(n_max + 1);
  parallel_for(n_max, options.threads, [&](std::size_t i) {
    const std::size_t n = 1 + i;
    try {
      slots[n] = partition_entry(g, f, base, n, scaled, options.point_budget);
    } catch (const BudgetExceeded&) {
    }
  });
  std::uint64_t used = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!slots[n] || used > options.point_budget) {
      t.truncated = true;
      break;
    }
    used += slots[n]->points;
    t.entries.push_back(std::move(*slots[n]));
  }
  return t;
}

std::string to_string(PressureMethod m) {
  switch (m) {
    case PressureMethod::spectral:
      return "spectral";
    case PressureMethod::z_extrapolation:
      return "z-extrapolation";
    case PressureMethod::exhaustion_sup:
      return "exhaustion-sup";
  }
  return "spectral";
}

PressureEstimate pressure_spectral(const FiniteGraph& g, const FiniteRangePotential& f) {
  const auto t = transfer_matrix(g, f);
  if (!irreducible_and_period(t.blocks.graph).irreducible)
    throw NotIrreducible("recoded graph is not irreducible", {});
  const auto pr = perron(t.matrix);
  PressureEstimate p;
  p.method = PressureMethod::spectral;
  p.iterations = pr.iterations;
  const double lo = std::log(pr.lambda_lo), hi = std::log(pr.lambda_hi);
  p.value = 0.5 * (lo + hi) + t.log_scale;
  p.error = 0.5 * (hi - lo) + 8 * kEps * std::max(1.0, std::abs(p.value));
  return p;
}

PressureEstimate pressure_from_table(const PartitionFunctionTable& t, unsigned period) {
  if (period == 0) throw InputError("period must be positive");
  std::vector<std::pair<double, double>> pts;  // (n, log Z_n)
  for (const auto& e : t.entries)
    if (e.n % period == 0 && e.value > 0.0)
      pts.emplace_back(static_cast<double>(e.n), std::log(e.value));
  if (pts.size() < 6)
    throw InputError("need at least 6 positive entries along the period class, found " +
                     std::to_string(pts.size()));
  // Successive growth rates converge geometrically for finite presentations;
  // (1/n) log Z_n itself only converges like 1/n.
  std::vector<double> rate;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    rate.push_back((pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first));
  std::vector<double> acc;
  for (std::size_t i = 0; i + 2 < rate.size(); ++i) {
    const double d1 = rate[i + 1] - rate[i];
    const double d2 = rate[i + 2] - rate[i + 1];
    const double den = d2 - d1;
    if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(rate[i + 2])))
      acc.push_back(rate[i + 2]);
    else
      acc.push_back(rate[i + 2] - d2 * d2 / den);
  }
  PressureEstimate p;
  p.method = PressureMethod::z_extrapolation;
  p.value = acc.back();
  p.iterations = acc.size();
  p.error = std::abs(acc.back() - acc[acc.size() - 2]) + 1e-12 * std::max(1.0, std::abs(p.value));
  return p;
}

PressureEstimate pressure_exhaustion(const Exhaustion& ex, const FiniteRangePotential& f) {
  if (!(f.graph() == ex.levels.back()))
    throw InputError("potential must be defined over the last exhaustion level");
  PressureEstimate p;
  p.method = PressureMethod::exhaustion_sup;
  double last_error = 0.0;
  for (std::size_t i = 0; i < ex.levels.size(); ++i) {
    const auto& level = ex.levels[i];
    const auto map = composed_inclusion(ex, i);
    auto fi = FiniteRangePotential::from_function(
        level, f.left_range(), f.right_range(), [&](const Word& w) {
          Word up;
          for (Symbol s : w) up.push_back(static_cast<Symbol>(map[s]));
          return f.weight(up);
        });
    auto pi = pressure_spectral(level, fi);
    if (!p.levels.empty() && pi.value < p.levels.back() - (pi.error + last_error))
      p.monotone = false;
    p.levels.push_back(pi.value);
    p.iterations += pi.iterations;
    last_error = pi.error;
  }
  p.value = p.levels.back();
  const double gap = p.levels.size() > 1 ? p.levels.back() - p.levels[p.levels.size() - 2] : 0.0;
  p.error = last_error + std::max(0.0, gap);
  return p;
}

std::size_t MarkovMeasure::state_index(const Word& block) const {
  auto it = std::lower_bound(states.begin(), states.end(), block);
  if (it == states.end() || *it != block) throw InputError("not a state of the measure");
  return static_cast<std::size_t>(it - states.begin());
}

double MarkovMeasure::row_defect() const {
  double d = 0.0;
  for (Eigen::Index i = 0; i < transition.rows(); ++i)
    d = std::max(d, std::abs(transition.row(i).sum() - 1.0));
  return d;
}

double MarkovMeasure::stationarity_defect() const {
  const Eigen::VectorXd r = transition.transpose() * stationary - stationary;
  return r.cwiseAbs().maxCoeff();
}

double MarkovMeasure::probability(const Word& w) const {
  if (w.size() < order) throw InputError("word shorter than the measure's order");
  if (!graph.is_word(w)) return 0.0;
  auto state = [&](std::size_t i) { return state_index(Word(w.begin() + i, w.begin() + i + order)); };
  std::size_t s = state(0);
  double p = stationary[static_cast<Eigen::Index>(s)];
  for (std::size_t i = 1; i + order <= w.size(); ++i) {
    const std::size_t t = state(i);
    p *= transition(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
    s = t;
  }
  return p;
}

MarkovMeasure make_markov_measure(const FiniteGraph& g, unsigned order, Eigen::MatrixXd transition) {
  if (order < 1) throw InputError("measure order must be at least 1");
  MarkovMeasure mu;
  mu.order = order;
  mu.graph = g;
  const auto hb = higher_block(g, order);
  mu.states = hb.blocks;
  const auto n = static_cast<Eigen::Index>(mu.states.size());
  if (transition.rows() != n || transition.cols() != n)
    throw InputError("transition matrix size does not match the number of blocks");
  for (Eigen::Index u = 0; u < n; ++u) {
    double row = 0.0;
    for (Eigen::Index v = 0; v < n; ++v) {
      const double p = transition(u, v);
      if (!(p >= 0.0) || !std::isfinite(p)) throw InputError("transition probabilities must be in [0,1]");
      if (p > 0.0 && !hb.graph.has_edge(static_cast<Symbol>(u), static_cast<Symbol>(v)))
        throw InputError("transition charges an inadmissible block pair");
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-9) throw InputError("transition rows must sum to 1");
    transition.row(u) /= row;
  }
  mu.transition = std::move(transition);
  // pi (P - I) = 0 with sum(pi) = 1, as a consistent overdetermined system.
  Eigen::MatrixXd a(n + 1, n);
  a.topRows(n) = mu.transition.transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(n).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b[n] = 1.0;
  Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
  for (Eigen::Index i = 0; i < n; ++i) pi[i] = std::max(pi[i], 0.0);
  mu.stationary = pi / pi.sum();
  return mu;
}

MarkovMeasure equilibrium_measure(const FiniteGraph& g, const FiniteRangePotential& f) {
  const auto t = transfer_matrix(g, f);
  if (!irreducible_and_period(t.blocks.graph).irreducible)
    throw NotIrreducible("recoded graph is not irreducible", {});
  const auto pr = perron(t.matrix);
  if (!pr.converged) throw ConvergenceError("power iteration did not converge within budget");
  const double lambda = pr.lambda();
  const auto n = t.matrix.rows();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v)
      if (t.matrix(u, v) > 0.0) p(u, v) = t.matrix(u, v) * pr.right[v] / (lambda * pr.right[u]);
    p.row(u) /= p.row(u).sum();
  }
  return make_markov_measure(g, static_cast<unsigned>(t.blocks.block_length), std::move(p));
}

double measure_entropy(const MarkovMeasure& mu) {
  CompensatedSum h;
  const auto n = mu.transition.rows();
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v) {
      const double p = mu.transition(u, v);
      if (p > 0.0) h.add(-mu.stationary[u] * p * std::log(p));
    }
  return h.value();
}

double measure_integral(const MarkovMeasure& mu, const FiniteRangePotential& f) {
  if (!(f.graph() == mu.graph)) throw InputError("potential and measure live on different graphs");
  if (f.window() > mu.order + 1)
    throw InputError("potential range exceeds what a measure of this order determines");
  CompensatedSum s;
  const auto n = mu.transition.rows();
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const double p = mu.transition(u, v);
      if (p <= 0.0) continue;
      Word block = mu.states[static_cast<std::size_t>(u)];
      block.push_back(mu.states[static_cast<std::size_t>(v)].back());
      block.resize(f.window());
      s.add(mu.stationary[u] * p * f.value(block));
    }
  }
  return s.value();
}

double measure_pressure(const MarkovMeasure& mu, const FiniteRangePotential& f) {
  return measure_entropy(mu) + measure_integral(mu, f);
}

std::string to_string(RatioTrend t) {
  switch (t) {
    case RatioTrend::stable:
      return "stable";
    case RatioTrend::decaying:
      return "decaying";
    case RatioTrend::growing:
      return "growing";
  }
  return "stable";
}

RecurrenceWitness positive_recurrence_test(const PartitionFunctionTable& t, double pressure) {
  RecurrenceWitness w;
  w.disclaimer =
      "finite-window witness: bounded ratios on this window do not prove positive recurrence";
  std::size_t first = 0;
  for (const auto& e : t.entries)
    if (e.value > 0.0) {
      first = e.n;
      break;
    }
  if (first == 0) throw InputError("table has no positive entries");
  if (t.size() < first + 8) throw InputError("table must extend at least 8 steps past its first positive entry");
  std::vector<std::pair<double, double>> pts;
  for (const auto& e : t.entries)
    if (e.n >= first && e.value > 0.0)
      pts.emplace_back(static_cast<double>(e.n), std::log(e.value) - static_cast<double>(e.n) * pressure);
  w.first = first;
  w.last = t.entries.back().n;
  w.min_ratio = std::numeric_limits<double>::infinity();
  w.max_ratio = 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    w.min_ratio = std::min(w.min_ratio, std::exp(y));
    w.max_ratio = std::max(w.max_ratio, std::exp(y));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(pts.size());
  const double den = k * sxx - sx * sx;
  w.slope = den > 0 ? (k * sxy - sx * sy) / den : 0.0;
  constexpr double kStableSlope = 1e-2;
  if (w.slope > kStableSlope)
    w.trend = RatioTrend::growing;
  else if (w.slope < -kStableSlope)
    w.trend = RatioTrend::decaying;
  else
    w.trend = RatioTrend::stable;
  return w;
}

ZetaSeries zeta_series(const PartitionFunctionTable& t, std::size_t order) {
  if (!t.base.empty()) throw InputError("zeta series needs the table of all periodic points (empty base word)");
  if (t.size() < order) throw InputError("table does not cover n = 1.." + std::to_string(order));
  ZetaSeries z;
  bool integral = true;
  for (std::size_t n = 1; n <= order; ++n)
    integral = integral && t.at(n).exact && t.at(n).exact->is_integer();
  // zeta' = L' zeta with L = sum Z_n t^n / n gives k c_k = sum_j Z_j c_{k-j}.
  if (integral) {
    std::vector<Rational> c{Rational(1)};
    for (std::size_t k = 1; k <= order; ++k) {
      Rational s = 0;
      for (std::size_t j = 1; j <= k; ++j) s += Rational(t.at(j).exact->total_count()) * c[k - j];
      c.push_back(s / static_cast<long>(k));
    }
    for (const auto& q : c) z.values.push_back(to_double(q));
    z.exact = std::move(c);
  } else {
    std::vector<double> c{1.0};
    for (std::size_t k = 1; k <= order; ++k) {
      double s = 0;
      for (std::size_t j = 1; j <= k; ++j) s += t.at(j).value * c[k - j];
      c.push_back(s / static_cast<double>(k));
    }
    z.values = std::move(c);
  }
  return z;
}

DistortionReport distortion_constant(const FiniteGraph& g, const FiniteRangePotential& f,
                                     const Word& w, std::size_t horizon) {
  if (!(f.graph() == g)) throw InputError("potential is defined over a different graph");
  if (w.empty() || !g.is_word(w)) throw InputError("distortion needs a nonempty admissible word");
  DistortionReport out;
  const std::size_t m = f.left_range();
  const std::size_t r = f.right_range();
  // In an irreducible graph every admissible word extends to a periodic
  // point, so ranging over admissible extensions is ranging over points.
  const auto lefts = g.words(m);
  const auto rights = g.words(r - 1);
  for (std::size_t n = w.size(); n <= horizon; ++n) {
    for (const auto& u : g.words(n)) {
      if (!std::equal(w.begin(), w.end(), u.begin())) continue;
      if (!std::equal(w.begin(), w.end(), u.end() - static_cast<long>(w.size()))) continue;
      ++out.windows;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& el : lefts) {
        if (m > 0 && !g.has_edge(el.back(), u.front())) continue;
        for (const auto& er : rights) {
          if (r > 1 && !g.has_edge(u.back(), er.front())) continue;
          Word full = el;
          full.insert(full.end(), u.begin(), u.end());
          full.insert(full.end(), er.begin(), er.end());
          double s = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            s += f.value(Word(full.begin() + static_cast<long>(i), full.begin() + static_cast<long>(i + m + r)));
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
      }
      if (hi - lo > out.value) {
        out.value = hi - lo;
        out.worst_window = u;
        out.worst_n = n;
      }
    }
  }
  out.no_pairs = out.windows == 0;
  return out;
}

}  // namespace shiftlab
