#include "shiftlab/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-14;

Interval divergent() { return {kInf, kInf}; }

// The part of a transfer tail that can contribute: vertices reachable from
// the entry support and reaching the exit support.
struct Trimmed {
  Eigen::VectorXd entry;
  Eigen::MatrixXd body;
  Eigen::VectorXd exit;
  double rho = 0.0;
};

Trimmed trim(const TransferTail& t) {
  const auto n = t.body.rows();
  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::vector<Eigen::Index> stack;
  for (Eigen::Index i = 0; i < n; ++i)
    if (t.entry[i] > 0) fwd[i] = 1, stack.push_back(i);
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (Eigen::Index v = 0; v < n; ++v)
      if (t.body(u, v) > 0 && !fwd[v]) fwd[v] = 1, stack.push_back(v);
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (t.exit[i] > 0) bwd[i] = 1, stack.push_back(i);
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (Eigen::Index u = 0; u < n; ++u)
      if (t.body(u, v) > 0 && !bwd[u]) bwd[u] = 1, stack.push_back(u);
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (fwd[i] && bwd[i]) keep.push_back(i);
  Trimmed out;
  const auto k = static_cast<Eigen::Index>(keep.size());
  out.entry.resize(k);
  out.exit.resize(k);
  out.body.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    out.entry[a] = t.entry[keep[a]];
    out.exit[a] = t.exit[keep[a]];
    for (Eigen::Index b = 0; b < k; ++b) out.body(a, b) = t.body(keep[a], keep[b]);
  }
  if (k > 0) out.rho = out.body.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}

// z^start e^T (I - zB)^{-1} x and its derivative, each with a residual-based
// error bound: for 0 <= zB with spectral radius < 1 the inverse is
// nonnegative, so |(I - zB)^{-1} r| <= |r|_inf (I - zB)^{-1} 1.
std::pair<Interval, Interval> transfer_series(const Trimmed& t, std::size_t start, double z) {
  const auto k = t.body.rows();
  if (k == 0) return {Interval::point(0.0), Interval::point(0.0)};
  if (z * t.rho >= 1.0) return {divergent(), divergent()};
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k) - z * t.body;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd y = lu.solve(t.exit);
  const Eigen::VectorXd by = t.body * y;
  const Eigen::VectorXd u = lu.solve(by);
  const Eigen::VectorXd s = lu.solve(Eigen::VectorXd::Ones(k));
  const double ry = (t.exit - a * y).cwiseAbs().maxCoeff();
  const double ru = (by - a * u).cwiseAbs().maxCoeff();
  const double es = std::abs(t.entry.dot(s));
  const double zs = std::pow(z, static_cast<double>(start));
  const double v = zs * t.entry.dot(y);
  const double v_err = zs * 2.0 * (ry * es) + kSlack * std::abs(v);
  const double sd = static_cast<double>(start);
  const double zs1 = start == 0 ? 0.0 : sd * std::pow(z, sd - 1.0);
  const double d = zs1 * t.entry.dot(y) + zs * t.entry.dot(u);
  // u solves against B y instead of B y_true; that error propagates through
  // one more application of the inverse.
  const double y_err = 2.0 * ry * s.cwiseAbs().maxCoeff();
  const double d_err = 2.0 * (zs1 * ry * es + zs * es * (ru + t.body.rowwise().sum().maxCoeff() * y_err)) +
                       kSlack * std::abs(d);
  return {{std::max(0.0, v - v_err), v + v_err}, {std::max(0.0, d - d_err), d + d_err}};
}

struct Parts {
  double radius = kInf;
  bool diverges_at_radius = false;
};

Parts analyse(const LoopSystem& ls, std::optional<Trimmed>& trimmed) {
  Parts p;
  const auto& t = ls.tail(0, 0);
  if (t.vanishes()) return p;
  switch (t.kind) {
    case LoopTail::Kind::zero:
      break;
    case LoopTail::Kind::geometric:
      if (t.sequence.ratio > 0.0) p.radius = 1.0 / t.sequence.ratio, p.diverges_at_radius = true;
      break;
    case LoopTail::Kind::polynomial:
      p.radius = 1.0;
      p.diverges_at_radius = t.sequence.exponent <= 1.0;
      break;
    case LoopTail::Kind::transfer:
      trimmed = trim(t.transfer);
      if (trimmed->rho > 0.0) p.radius = 1.0 / trimmed->rho, p.diverges_at_radius = true;
      break;
  }
  return p;
}

void require_single_base(const LoopSystem& ls) {
  validate(ls);
  if (ls.base_count() != 1)
    throw InputError("recurrence classification needs a single distinguished vertex");
}

// F (order 0) or F' (order 1) at z, as an enclosure.
Interval evaluate(const LoopSystem& ls, double z, int order) {
  std::optional<Trimmed> trimmed;
  const Parts parts = analyse(ls, trimmed);
  if (z > parts.radius || (z == parts.radius && parts.diverges_at_radius)) return divergent();
  CompensatedSum s;
  for (const auto& l : ls.loops) {
    const double n = static_cast<double>(l.length);
    const double w = l.weight();
    s.add(order == 0 ? w * std::pow(z, n) : w * n * std::pow(z, n - 1.0));
  }
  Interval total{s.value() * (1 - kSlack), s.value() * (1 + kSlack)};
  const auto& t = ls.tail(0, 0);
  if (t.vanishes()) return total;
  Interval tail;
  switch (t.kind) {
    case LoopTail::Kind::zero:
      return total;
    case LoopTail::Kind::geometric:
    case LoopTail::Kind::polynomial:
      if (z == 0.0) return total;
      tail = tail_series(t.sequence, t.start, order, z);
      if (order == 1) tail = (1.0 / z) * tail;
      break;
    case LoopTail::Kind::transfer: {
      auto [f, df] = transfer_series(*trimmed, t.start, z);
      tail = order == 0 ? f : df;
      break;
    }
  }
  if (!tail.finite()) return divergent();
  return total + tail;
}

}  // namespace

std::string to_string(Recurrence r) {
  switch (r) {
    case Recurrence::transient:
      return "transient";
    case Recurrence::null_recurrent:
      return "null_recurrent";
    case Recurrence::positive_recurrent:
      return "positive_recurrent";
    case Recurrence::spr:
      return "SPR";
    case Recurrence::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

Interval first_return_series(const LoopSystem& ls, double z) {
  require_single_base(ls);
  return evaluate(ls, z, 0);
}

Interval first_return_derivative(const LoopSystem& ls, double z) {
  require_single_base(ls);
  return evaluate(ls, z, 1);
}

double first_return_radius(const LoopSystem& ls) {
  require_single_base(ls);
  std::optional<Trimmed> trimmed;
  return analyse(ls, trimmed).radius;
}

RecurrenceClass recurrence_classify(const LoopSystem& ls, const ClassifyOptions& options) {
  require_single_base(ls);
  RecurrenceClass rc;
  std::optional<Trimmed> trimmed;
  const Parts parts = analyse(ls, trimmed);
  rc.radius = parts.radius;

  // F at the radius; an entire F is unbounded unless it vanishes.
  if (std::isinf(parts.radius)) {
    const bool any = !ls.loops.empty() || !ls.tail(0, 0).vanishes();
    rc.f_at_radius = any ? divergent() : Interval::point(0.0);
    rc.df_at_radius = rc.f_at_radius;
  } else {
    rc.f_at_radius = evaluate(ls, parts.radius, 0);
    rc.df_at_radius = evaluate(ls, parts.radius, 1);
  }
  const Interval& fr = rc.f_at_radius;
  const double tol = options.unit_tolerance;

  if (fr.finite() && fr.lo >= 1.0 - tol && fr.hi <= 1.0 + tol) {
    rc.root = Interval::point(parts.radius);
    rc.lambda = Interval::point(1.0 / parts.radius);
    rc.df_at_root = rc.df_at_radius;
    if (rc.df_at_radius.finite()) {
      rc.verdict = Recurrence::positive_recurrent;
    } else {
      rc.verdict = Recurrence::null_recurrent;
    }
    return rc;
  }
  if (fr.hi < 1.0) {
    rc.verdict = Recurrence::transient;
    return rc;
  }
  if (!(fr.lo > 1.0)) {
    rc.verdict = Recurrence::indeterminate;
    rc.note = "enclosure of F(R) straddles 1 and is wider than the tolerance";
    return rc;
  }

  // F(R) > 1: the root lies strictly inside the disc.  Bracket it.
  double lo = 0.0;
  double hi = parts.radius;
  if (std::isinf(hi)) {
    hi = 1.0;
    for (int i = 0; i < 2000 && !(evaluate(ls, hi, 0).lo > 1.0); ++i) hi *= 2.0;
    if (!(evaluate(ls, hi, 0).lo > 1.0)) throw ConvergenceError("could not bracket the root of F(z) = 1");
  }
  while (hi - lo > options.root_tolerance * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Interval f = evaluate(ls, mid, 0);
    if (f.hi < 1.0) {
      lo = mid;
    } else if (f.lo > 1.0) {
      hi = mid;
    } else {
      // The enclosure itself contains 1: shrink around mid as far as the
      // enclosures allow and stop.
      break;
    }
  }
  rc.verdict = Recurrence::spr;
  rc.root = Interval{lo, hi};
  rc.lambda = Interval{1.0 / hi, lo > 0.0 ? 1.0 / lo : kInf};
  const Interval d_lo = evaluate(ls, lo, 1);
  const Interval d_hi = evaluate(ls, hi, 1);
  rc.df_at_root = Interval{d_lo.lo, d_hi.hi};
  return rc;
}

}  // namespace shiftlab
