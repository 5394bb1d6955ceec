#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "polarnet/dynamics.hpp"
#include "polarnet/graph.hpp"
#include "polarnet/laplacian.hpp"

namespace polarnet {

/// Sum over edges of w(u,v) (x_u - x_v)^2.
double disagreement(const WeightedGraph& g, const Eigen::VectorXd& x);

/// x^T L x; equal to disagreement() up to rounding.
double disagreement_quadratic(const Eigen::MatrixXd& laplacian, const Eigen::VectorXd& x);

/// Sum of squared deviations from the plain mean.
double polarization(const Eigen::VectorXd& x);

struct WeightedPolarization {
  double value = 0.0;  // sum_v kappa_v (x_v - alpha)^2
  double alpha = 0.0;  // kappa-weighted mean of x
};

WeightedPolarization weighted_polarization(const Eigen::VectorXd& x, const Eigen::VectorXd& kappa);

/// I - 1 kappa^T / sum(kappa).
Eigen::MatrixXd kappa_projector(const Eigen::VectorXd& kappa);

/// x^T P^T K P x with P = kappa_projector(kappa).
double weighted_polarization_quadratic(const Eigen::VectorXd& x, const Eigen::VectorXd& kappa);

/// rho * disagreement + (1 - rho) * polarization; rho must lie in [0, 1].
double pd_index(double disagreement, double polarization, double rho);

/// D = 1 / r_{s1,s0}.
double fd_disagreement_closed(const LaplacianKit& kit, NodeId s0, NodeId s1);

/// P = (d_B(s1,s0) / r_{s1,s0})^2, never below 1/2.
double fd_polarization_closed(const LaplacianKit& kit, NodeId s0, NodeId s1);

/// s~ = (I - kappa 1^T / sum kappa) B K 1.
Eigen::VectorXd fj_centered_source(const FjModel& m);

/// s~^T (L+K)^{-1} L (L+K)^{-1} s~.
double fj_disagreement_quadratic(const FjModel& m);
/// s~^T (L+K)^{-1} K (L+K)^{-1} s~.
double fj_weighted_polarization_quadratic(const FjModel& m);

/// I~(1/2) = 1/2 s~^T (L+K)^{-1} s~. Only defined at rho = 1/2; any other
/// rho is rejected in favor of the definitional route (fj_report).
double fj_index_closed(const FjModel& m, double rho = 0.5);

struct IndexReport {
  std::string model;  // "fd" or "fj"
  double disagreement = 0.0;
  double polarization = 0.0;
  std::optional<double> weighted_polarization;
  std::optional<double> alpha;
  double rho = 0.5;
  double index = 0.0;
};

/// Definitional indices of the FD steady state.
IndexReport fd_report(const FdModel& m, double rho);

/// Definitional indices of the FJ steady state; index is I~(rho), which
/// uses the weighted polarization.
IndexReport fj_report(const FjModel& m, double rho);

}  // namespace polarnet
