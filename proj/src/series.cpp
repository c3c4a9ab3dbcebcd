#include "shiftlab/series.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-14;  // relative rounding allowance on explicit sums
constexpr std::size_t kExplicitTerms = 20000;
constexpr std::size_t kMaxTerms = 20'000'000;

Interval widen(double lo, double hi) {
  return {lo - kSlack * std::abs(lo), hi + kSlack * std::abs(hi)};
}

// sum_{k >= N} c k^-e for e > 1, N >= 1: convex decreasing summand, so the
// trapezoid rule gives the lower bound and the midpoint rule the upper one.
Interval power_sum_from(double c, double e, double N) {
  const auto integral = [&](double x) { return c * std::pow(x, 1.0 - e) / (e - 1.0); };
  return {integral(N) + 0.5 * c * std::pow(N, -e), integral(N - 0.5)};
}

Interval geometric_series(const SequenceTail& t, std::size_t from, double p, double z) {
  const double x = t.ratio * z;
  if (x >= 1.0) return {0.0, kInf};
  const double a = static_cast<double>(from);
  const double c = t.coefficient;
  if (x == 0.0) return Interval::point(0.0);
  if (p == 0.0) {
    const double v = c * std::pow(x, a) / (1.0 - x);
    return widen(v, v);
  }
  if (p == 1.0) {
    const double v = c * std::pow(x, a) * (a - (a - 1.0) * x) / ((1.0 - x) * (1.0 - x));
    return widen(v, v);
  }
  // General p: explicit sum until the term ratio ((n+1)/n)^p x drops below 1
  // and the remainder is negligible, then a geometric remainder bound.
  CompensatedSum s;
  std::size_t n = std::max<std::size_t>(from, 1);
  for (; n < kMaxTerms; ++n) {
    const double term = c * std::pow(static_cast<double>(n), p) * std::pow(x, static_cast<double>(n));
    s.add(term);
    const double theta = std::pow((n + 1.0) / n, p) * x;
    if (theta < 1.0 && term < 1e-18 * std::max(1e-300, s.value())) {
      const double next = term * theta;
      const double rem = next / (1.0 - theta);
      return widen(s.value(), s.value() + rem);
    }
  }
  throw ConvergenceError("geometric tail series did not settle");
}

Interval polynomial_series(const SequenceTail& t, std::size_t from, double p, double z) {
  const double c = t.coefficient;
  const double q = t.exponent;
  const double shift = t.offset;
  if (z > 1.0) return {0.0, kInf};
  const std::size_t start = std::max<std::size_t>(from, 1);
  auto summand = [&](std::size_t n) {
    const double dn = static_cast<double>(n);
    return c * std::pow(dn, p) * std::pow(dn + shift, -q) * std::pow(z, dn);
  };
  if (z == 1.0) {
    const double e = q - p;
    if (e <= 1.0) return {0.0, kInf};
    CompensatedSum s;
    const std::size_t K = start + kExplicitTerms;
    for (std::size_t n = start; n < K; ++n) s.add(summand(n));
    const double N = static_cast<double>(K) + shift;
    Interval rem = power_sum_from(c, e, N);
    const double damp = p == 0.0 ? 1.0 : std::pow(static_cast<double>(K) / N, p);
    return widen(s.value() + damp * rem.lo, s.value() + rem.hi);
  }
  if (z <= 0.0) return Interval::point(0.0);
  CompensatedSum s;
  for (std::size_t n = start; n < kMaxTerms; ++n) {
    const double term = summand(n);
    s.add(term);
    const double theta = std::pow((n + 1.0) / n, std::max(p, 0.0)) * z;
    if (theta < 1.0 && term < 1e-18 * std::max(1e-300, s.value())) {
      const double rem = term * theta / (1.0 - theta);
      return widen(s.value(), s.value() + rem);
    }
  }
  // z is so close to 1 that the explicit sum cannot settle; fall back on the
  // z = 1 enclosure, which dominates termwise.
  Interval at_one = polynomial_series(t, from, p, 1.0);
  return {s.value(), at_one.hi};
}

}  // namespace

double SequenceTail::term(double n) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::geometric:
      return coefficient * std::pow(ratio, n);
    case Kind::polynomial:
      return coefficient * std::pow(n + offset, -exponent);
  }
  return 0.0;
}

Interval tail_series(const SequenceTail& tail, std::size_t from, double p, double z) {
  if (tail.vanishes() || z == 0.0) return Interval::point(0.0);
  switch (tail.kind) {
    case SequenceTail::Kind::zero:
      return Interval::point(0.0);
    case SequenceTail::Kind::geometric:
      return geometric_series(tail, from, p, z);
    case SequenceTail::Kind::polynomial:
      return polynomial_series(tail, from, p, z);
  }
  return Interval::point(0.0);
}

}  // namespace shiftlab
