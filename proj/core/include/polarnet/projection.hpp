#pragma once

#include <Eigen/Dense>

namespace polarnet {

/// Euclidean projection onto { x : lower <= x_i <= upper, sum(x) <= budget }.
///
/// The solution is clip(y - tau, lower, upper) with tau = 0 when the clipped
/// point already meets the budget, otherwise the unique tau > 0 at which the
/// clipped sum equals the budget. Requires lower <= upper and
/// n * lower <= budget.
Eigen::VectorXd project_box_budget(const Eigen::VectorXd& y, double lower, double upper, double budget);

/// Projection onto { 0 <= d <= 1, 1^T d <= k }.
inline Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& y, double k) {
  return project_box_budget(y, 0.0, 1.0, k);
}

}  // namespace polarnet
