#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace shiftlab {

/// Perron data of an irreducible nonnegative matrix by power iteration on
/// I + M (primitive whenever M is irreducible).  Every iterate x > 0 gives
/// Collatz-Wielandt bounds  min (Mx)_i/x_i <= lambda <= max (Mx)_i/x_i.
struct PerronResult {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  Eigen::VectorXd right;  // normalized to sum 1
  Eigen::VectorXd left;   // normalized so left . right = 1
  std::size_t iterations = 0;
  bool converged = false;

  double lambda() const { return 0.5 * (lambda_lo + lambda_hi); }
};

PerronResult perron(const Eigen::MatrixXd& m, double rel_tol = 1e-13,
                    std::size_t max_iterations = 500000);

}  // namespace shiftlab
