#pragma once

#include <Eigen/Dense>

namespace expconvex {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;  // ‖A x − b‖₂
  int iterations = 0;
  bool converged = false;
};

/// Lawson–Hanson active-set solver for min ‖A x − b‖₂ subject to x ≥ 0.
/// Deterministic: ties in the dual are broken by the lowest column index.
/// max_iterations ≤ 0 selects 3·cols.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0);

}  // namespace expconvex
