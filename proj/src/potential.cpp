#include "shiftlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftlab/errors.hpp"

namespace shiftlab {

std::uint64_t FiniteRangePotential::key(const Word& w) const {
  std::uint64_t k = 0;
  const std::uint64_t base = graph_.vertex_count() + 1;
  for (Symbol s : w) k = k * base + (s + 1);
  return k;
}

void FiniteRangePotential::finish() {
  const double base = static_cast<double>(graph_.vertex_count() + 1);
  if (std::pow(base, static_cast<double>(window())) > 1.8e19)
    throw InputError("potential window too long for this alphabet");
  lookup_.clear();
  lookup_.reserve(windows_.size());
  for (std::size_t i = 0; i < windows_.size(); ++i) lookup_.emplace(key(windows_[i]), i);
  for (double v : values_)
    if (!std::isfinite(v)) throw InputError("potential values must be finite");
  if (values_.empty()) {
    max_ = min_ = 0.0;
  } else {
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    min_ = *lo;
    max_ = *hi;
  }
}

FiniteRangePotential FiniteRangePotential::from_function(
    const FiniteGraph& g, unsigned left, unsigned right,
    const std::function<Weight(const Word&)>& fn) {
  if (right < 1) throw InputError("right range must be at least 1");
  FiniteRangePotential f;
  f.graph_ = g;
  f.left_ = left;
  f.right_ = right;
  f.windows_ = g.words(left + right);
  bool exact = true;
  std::vector<Rational> ex;
  for (const auto& w : f.windows_) {
    Weight wt = fn(w);
    f.values_.push_back(wt.value);
    if (exact && wt.exact) {
      ex.push_back(*wt.exact);
    } else {
      exact = false;
    }
  }
  if (exact) f.exact_ = std::move(ex);
  f.finish();
  return f;
}

FiniteRangePotential FiniteRangePotential::from_table(const FiniteGraph& g, unsigned left,
                                                      unsigned right,
                                                      const std::map<Word, Weight>& weights,
                                                      std::optional<Weight> fallback) {
  for (const auto& [w, v] : weights) {
    if (w.size() != left + right)
      throw InputError("weight key '" + g.format(w) + "' has the wrong length");
    if (!g.is_word(w)) throw InputError("weight key '" + g.format(w) + "' is not admissible");
  }
  return from_function(g, left, right, [&](const Word& w) {
    auto it = weights.find(w);
    if (it != weights.end()) return it->second;
    if (!fallback) throw InputError("no weight for window '" + g.format(w) + "'");
    return *fallback;
  });
}

FiniteRangePotential FiniteRangePotential::zero(const FiniteGraph& g) {
  return constant(g, Weight::of(0));
}

FiniteRangePotential FiniteRangePotential::constant(const FiniteGraph& g, const Weight& c) {
  return from_function(g, 0, 1, [&](const Word&) { return c; });
}

std::optional<std::size_t> FiniteRangePotential::find(const Word& window) const {
  if (window.size() != this->window()) return std::nullopt;
  for (Symbol s : window)
    if (s >= graph_.vertex_count()) return std::nullopt;
  auto it = lookup_.find(key(window));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteRangePotential::index(const Word& window) const {
  auto i = find(window);
  if (!i) throw InputError("window '" + graph_.format(window) + "' is outside the potential's domain");
  return *i;
}

std::size_t FiniteRangePotential::index_cyclic(const Word& cyclic, std::size_t i) const {
  const auto p = static_cast<long>(cyclic.size());
  const std::uint64_t base = graph_.vertex_count() + 1;
  std::uint64_t k = 0;
  for (long j = static_cast<long>(i) - left_; j < static_cast<long>(i) + right_; ++j)
    k = k * base + (cyclic[static_cast<std::size_t>(((j % p) + p) % p)] + 1);
  auto it = lookup_.find(k);
  if (it == lookup_.end()) throw InputError("periodic point leaves the potential's domain");
  return it->second;
}

Weight FiniteRangePotential::weight(const Word& window) const {
  const auto i = index(window);
  Weight w{values_[i], std::nullopt};
  if (exact_) w.exact = (*exact_)[i];
  return w;
}

FiniteRangePotential FiniteRangePotential::plus_constant(const Weight& c) const {
  return from_function(graph_, left_, right_, [&](const Word& w) {
    Weight a = weight(w);
    Weight out{a.value + c.value, std::nullopt};
    if (a.exact && c.exact) out.exact = *a.exact + *c.exact;
    return out;
  });
}

namespace {

Word cyclic_window(const Word& cyclic, std::size_t i, unsigned left, unsigned right) {
  const auto p = static_cast<long>(cyclic.size());
  Word w;
  w.reserve(left + right);
  for (long j = static_cast<long>(i) - left; j < static_cast<long>(i) + right; ++j)
    w.push_back(cyclic[static_cast<std::size_t>(((j % p) + p) % p)]);
  return w;
}

void check_point(const FiniteRangePotential& f, const PeriodicPoint& x) {
  const auto& g = f.graph();
  const auto& w = x.word;
  if (w.empty()) throw InputError("empty periodic point");
  if (!g.is_word(w) || !g.has_edge(w.back(), w.front()))
    throw InputError("'" + g.format(w) + "' is not a periodic point of the graph");
}

}  // namespace

Weight evaluate_at(const FiniteRangePotential& f, const Word& cyclic, std::size_t i) {
  return f.weight(cyclic_window(cyclic, i, f.left_range(), f.right_range()));
}

double birkhoff_sum(const FiniteRangePotential& f, const PeriodicPoint& x, std::size_t n) {
  check_point(f, x);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += f.values()[f.index_cyclic(x.word, i)];
  return s;
}

std::optional<Rational> birkhoff_sum_exact(const FiniteRangePotential& f, const PeriodicPoint& x,
                                           std::size_t n) {
  check_point(f, x);
  if (!f.is_exact()) return std::nullopt;
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i)
    s += f.exact_at(f.index_cyclic(x.word, i));
  return s;
}

BowenReduction bowen_reduce(const FiniteRangePotential& f) {
  const auto& g = f.graph();
  const unsigned m = f.left_range();
  const unsigned r = f.right_range();
  if (m == 0) return {f, FiniteRangePotential::zero(g)};

  auto future = FiniteRangePotential::from_function(g, 0, m + r,
                                                    [&](const Word& w) { return f.weight(w); });
  auto transfer = FiniteRangePotential::from_function(g, m, m + r - 1, [&](const Word& w) {
    Weight sum = Weight::of(0);
    for (unsigned k = 0; k < m; ++k) {
      Weight t = f.weight(Word(w.begin() + k, w.begin() + k + m + r));
      sum.value += t.value;
      if (sum.exact && t.exact) {
        *sum.exact += *t.exact;
      } else {
        sum.exact.reset();
      }
    }
    return sum;
  });
  return {std::move(future), std::move(transfer)};
}

CoboundaryCheck verify_coboundary(const FiniteRangePotential& f, const BowenReduction& r) {
  CoboundaryCheck out;
  const auto& g = f.graph();
  // Coordinates touched by f, future, transfer and transfer o S.
  const long lo = -static_cast<long>(std::max({f.left_range(), r.future.left_range(),
                                                r.transfer.left_range()}));
  const long hi = static_cast<long>(std::max({f.right_range() - 1, r.future.right_range() - 1,
                                              r.transfer.right_range()}));
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  const long origin = -lo;
  auto at = [&](const FiniteRangePotential& p, const Word& w, long shift) {
    const long b = origin + shift - static_cast<long>(p.left_range());
    return p.weight(Word(w.begin() + b, w.begin() + b + p.window()));
  };
  out.exact = f.is_exact() && r.future.is_exact() && r.transfer.is_exact();
  double scale = 1.0;
  for (double v : f.values()) scale = std::max(scale, std::abs(v));
  for (const auto& w : g.words(len)) {
    ++out.words_checked;
    const Weight a = at(f, w, 0), b = at(r.transfer, w, 1), c = at(r.transfer, w, 0),
                 d = at(r.future, w, 0);
    bool ok;
    if (out.exact) {
      ok = *a.exact + *b.exact - *c.exact == *d.exact;
      if (!ok) out.max_defect = std::max(out.max_defect, std::abs(to_double(*a.exact + *b.exact - *c.exact - *d.exact)));
    } else {
      const double defect = std::abs(a.value + b.value - c.value - d.value);
      out.max_defect = std::max(out.max_defect, defect);
      ok = defect <= 1e-12 * scale * static_cast<double>(len);
    }
    if (!ok && out.holds) {
      out.holds = false;
      out.witness = w;
    }
  }
  return out;
}

}  // namespace shiftlab
