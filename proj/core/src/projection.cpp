#include "polarnet/projection.hpp"

#include <cmath>

#include "polarnet/graph.hpp"

namespace polarnet {
namespace {

double clipped_sum(const Eigen::VectorXd& y, double tau, double lower, double upper) {
  return (y.array() - tau).max(lower).min(upper).sum();
}

}  // namespace

Eigen::VectorXd project_box_budget(const Eigen::VectorXd& y, double lower, double upper, double budget) {
  if (!(lower <= upper)) throw InvalidInput("projection: lower bound exceeds upper bound");
  const auto n = static_cast<double>(y.size());
  if (n * lower > budget) throw InvalidInput("projection: budget below n * lower");

  Eigen::VectorXd x = y.array().max(lower).min(upper).matrix();
  if (x.sum() <= budget) return x;

  // clipped_sum is nonincreasing in tau; bracket the root and bisect.
  double lo = 0.0;
  double hi = y.maxCoeff() - lower;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (clipped_sum(y, mid, lower, upper) > budget) lo = mid;
    else hi = mid;
  }

  // Solve exactly on the active set found by bisection.
  double tau = hi;
  double free_sum = 0.0;
  double fixed_sum = 0.0;
  Eigen::Index free_count = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double shifted = y(i) - tau;
    if (shifted >= upper) fixed_sum += upper;
    else if (shifted <= lower) fixed_sum += lower;
    else {
      free_sum += y(i);
      ++free_count;
    }
  }
  if (free_count > 0) {
    const double exact = (free_sum + fixed_sum - budget) / static_cast<double>(free_count);
    if (exact >= lo - 1e-12 && exact <= hi + 1e-12) tau = exact;
  }
  x = (y.array() - tau).max(lower).min(upper).matrix();
  return x;
}

}  // namespace polarnet
