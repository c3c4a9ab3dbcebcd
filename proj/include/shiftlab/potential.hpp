#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "shiftlab/graph.hpp"
#include "shiftlab/rational.hpp"

namespace shiftlab {

/// A real weight, exact when it came from a rational literal.
struct Weight {
  double value = 0.0;
  std::optional<Rational> exact;

  static Weight of(const Rational& q) { return {to_double(q), q}; }
  static Weight approx(double v) { return {v, std::nullopt}; }
};

/// f(x) = table[x[-left .. right-1]]: a potential depending on the
/// coordinates -left..right-1.  The table is defined on exactly the
/// admissible (left+right)-words of the underlying graph.
class FiniteRangePotential {
 public:
  FiniteRangePotential() = default;

  // Words missing from `weights` take `fallback`; without a fallback every
  // admissible window must be listed.  Inadmissible keys throw InputError.
  static FiniteRangePotential from_table(const FiniteGraph& g, unsigned left, unsigned right,
                                         const std::map<Word, Weight>& weights,
                                         std::optional<Weight> fallback = std::nullopt);
  static FiniteRangePotential from_function(const FiniteGraph& g, unsigned left, unsigned right,
                                            const std::function<Weight(const Word&)>& fn);
  static FiniteRangePotential zero(const FiniteGraph& g);
  static FiniteRangePotential constant(const FiniteGraph& g, const Weight& c);

  const FiniteGraph& graph() const noexcept { return graph_; }
  unsigned left_range() const noexcept { return left_; }
  unsigned right_range() const noexcept { return right_; }
  std::size_t window() const noexcept { return left_ + right_; }
  bool future_only() const noexcept { return left_ == 0; }

  const std::vector<Word>& windows() const noexcept { return windows_; }
  const std::vector<double>& values() const noexcept { return values_; }
  bool is_exact() const noexcept { return exact_.has_value(); }

  // Index into windows(); throws InputError for an inadmissible window.
  std::size_t index(const Word& window) const;
  std::optional<std::size_t> find(const Word& window) const;
  double value(const Word& window) const { return values_[index(window)]; }
  // Index of the window of S^i x for the periodic point with word `cyclic`.
  std::size_t index_cyclic(const Word& cyclic, std::size_t i) const;
  Weight weight(const Word& window) const;
  const Rational& exact_at(std::size_t i) const { return exact_->at(i); }

  double upper_bound() const noexcept { return max_; }
  double lower_bound() const noexcept { return min_; }
  double oscillation() const noexcept { return max_ - min_; }

  FiniteRangePotential plus_constant(const Weight& c) const;

 private:
  std::uint64_t key(const Word& w) const;
  void finish();

  FiniteGraph graph_;
  unsigned left_ = 0;
  unsigned right_ = 1;
  std::vector<Word> windows_;
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
  double max_ = 0.0;
  double min_ = 0.0;
};

/// The Birkhoff sum f(x) + f(Sx) + ... + f(S^{n-1}x) along a periodic point;
/// windows wrap cyclically.  Throws InputError when x is not a periodic
/// point of the potential's graph.
double birkhoff_sum(const FiniteRangePotential& f, const PeriodicPoint& x, std::size_t n);
std::optional<Rational> birkhoff_sum_exact(const FiniteRangePotential& f, const PeriodicPoint& x,
                                           std::size_t n);

// f evaluated at S^i x for a periodic point x.
Weight evaluate_at(const FiniteRangePotential& f, const Word& cyclic, std::size_t i);

/// Bowen's replacement of f by a cohomologous future-only potential:
///   future   = f o S^m                  (left range 0, right range m+r)
///   transfer = sum_{k<m} f o S^k        (left range m, right range m+r-1)
/// so that future = f + transfer o S - transfer.
struct BowenReduction {
  FiniteRangePotential future;
  FiniteRangePotential transfer;
};

BowenReduction bowen_reduce(const FiniteRangePotential& f);

struct CoboundaryCheck {
  bool holds = true;
  bool exact = false;
  std::size_t words_checked = 0;
  double max_defect = 0.0;
  std::optional<Word> witness;
};

// Checks future = f + transfer o S - transfer on every admissible word
// covering all four windows.
CoboundaryCheck verify_coboundary(const FiniteRangePotential& f, const BowenReduction& r);

}  // namespace shiftlab
