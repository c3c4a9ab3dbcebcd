#include "shiftlab/perron.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

struct Sweep {
  Eigen::VectorXd vec;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

Sweep iterate(const Eigen::MatrixXd& m, double rel_tol, std::size_t max_iterations) {
  const auto n = m.rows();
  Sweep s;
  s.vec = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd mx = m * s.vec;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = mx[i] / s.vec[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    // Bounds from different iterates are all valid; keep the tightest.
    if (it == 1) {
      s.lo = lo;
      s.hi = hi;
    } else {
      s.lo = std::max(s.lo, lo);
      s.hi = std::min(s.hi, hi);
    }
    s.iterations = it;
    const double gap = s.hi - s.lo;
    if (gap <= rel_tol * s.hi || s.hi == 0.0) {
      s.converged = true;
      break;
    }
    Eigen::VectorXd next = s.vec + mx;
    next /= next.sum();
    for (Eigen::Index i = 0; i < n; ++i)
      if (!(next[i] > 0.0)) next[i] = std::numeric_limits<double>::min();
    s.vec = std::move(next);
  }
  return s;
}

}  // namespace

PerronResult perron(const Eigen::MatrixXd& m, double rel_tol, std::size_t max_iterations) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw InputError("perron: matrix must be square and nonempty");
  if ((m.array() < 0.0).any()) throw InputError("perron: matrix has negative entries");
  PerronResult out;
  Sweep right = iterate(m, rel_tol, max_iterations);
  Sweep left = iterate(m.transpose(), rel_tol, max_iterations);
  out.lambda_lo = std::max(right.lo, left.lo);
  out.lambda_hi = std::min(right.hi, left.hi);
  out.iterations = right.iterations + left.iterations;
  out.converged = right.converged || left.converged;
  out.right = right.vec / right.vec.sum();
  out.left = left.vec / left.vec.dot(out.right);
  return out;
}

}  // namespace shiftlab
