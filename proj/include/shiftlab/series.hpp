#pragma once

#include <cstddef>
#include <limits>

namespace shiftlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  double mid() const { return hi == std::numeric_limits<double>::infinity() ? hi : 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool finite() const { return hi < std::numeric_limits<double>::infinity(); }

  Interval& operator+=(const Interval& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }
  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator*(double s, const Interval& a) {
    return s >= 0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo};
  }
};

/// Closed-form description of a nonnegative sequence a_n beyond an explicit
/// prefix:  zero, geometric  c * ratio^n,  or polynomial  c * (n+offset)^-exponent.
struct SequenceTail {
  enum class Kind { zero, geometric, polynomial };

  Kind kind = Kind::zero;
  double coefficient = 0.0;
  double ratio = 0.0;
  double exponent = 0.0;
  double offset = 0.0;

  static SequenceTail zero() { return {}; }
  static SequenceTail geometric(double c, double ratio) { return {Kind::geometric, c, ratio, 0, 0}; }
  static SequenceTail polynomial(double c, double q, double offset = 0) {
    return {Kind::polynomial, c, 0, q, offset};
  }

  bool vanishes() const { return kind == Kind::zero || coefficient == 0.0; }
  double term(double n) const;
};

/// Rigorous enclosure of  sum_{n >= from} n^p a_n z^n  for the tail a_n.
/// Divergent sums return hi = +infinity.  Polynomial tails at z = 1 use
/// integral comparison; geometric tails are summed in closed form for
/// p in {0, 1}.
Interval tail_series(const SequenceTail& tail, std::size_t from, double p, double z);

// Kahan-compensated accumulator; explicit partial sums feed the enclosures.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace shiftlab
