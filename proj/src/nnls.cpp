#include "expconvex/nnls.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace expconvex {

namespace {

using Eigen::Index;

// Least-squares solution restricted to the passive columns; other entries 0.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const std::vector<bool>& passive) {
  std::vector<Index> cols;
  for (Index j = 0; j < a.cols(); ++j)
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);

  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  if (cols.empty()) return z;
  Eigen::MatrixXd sub(a.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Index>(k)) = a.col(cols[k]);
  const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(static_cast<Index>(k));
  return z;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  const Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n);

  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * a.cwiseAbs().colwise().sum().maxCoeff() *
                     static_cast<double>(std::max(a.rows(), n));

  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  // Columns whose dual stayed positive but whose solve refused them.
  std::vector<bool> blocked(static_cast<std::size_t>(n), false);

  for (;;) {
    const Eigen::VectorXd dual = a.transpose() * (b - a * out.x);
    Index best = -1;
    double best_value = tol;
    for (Index j = 0; j < n; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      if (!passive[sj] && !blocked[sj] && dual(j) > best_value) {
        best = j;
        best_value = dual(j);
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    if (out.iterations >= max_iterations) break;
    ++out.iterations;

    passive[static_cast<std::size_t>(best)] = true;
    Eigen::VectorXd z = solve_passive(a, b, passive);
    if (z(best) <= 0.0) {
      // Round-off made the incoming column useless; exclude it until the
      // passive set changes.
      passive[static_cast<std::size_t>(best)] = false;
      blocked[static_cast<std::size_t>(best)] = true;
      continue;
    }

    for (int inner = 0; inner < 3 * n; ++inner) {
      bool feasible = true;
      double alpha = 1.0;
      for (Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, out.x(j) / (out.x(j) - z(j)));
        }
      }
      if (feasible) break;
      out.x += alpha * (z - out.x);
      for (Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && out.x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          out.x(j) = 0.0;
        }
      }
      z = solve_passive(a, b, passive);
    }
    for (Index j = 0; j < n; ++j) out.x(j) = passive[static_cast<std::size_t>(j)] ? std::max(z(j), 0.0) : 0.0;
    std::fill(blocked.begin(), blocked.end(), false);
  }

  out.residual_norm = (a * out.x - b).norm();
  if (!out.x.allFinite() || !std::isfinite(out.residual_norm)) out.converged = false;
  return out;
}

}  // namespace expconvex
