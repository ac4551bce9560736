#pragma once

#include <Eigen/Dense>
#include <vector>

#include "leadvar/scvar.hpp"

namespace leadvar {

/// State of the MultiCluster-VAR alternating fit.  A = D G is the low-rank
/// structural matrix: columns of D are cluster prototypes on the
/// kappa-scaled simplex, columns of G are soft model-to-cluster weights on
/// the unit simplex.
struct McvarState {
  Eigen::MatrixXd D;  // K x r
  Eigen::MatrixXd G;  // r x K
  Eigen::MatrixXd V;  // Kp x K
  Eigen::MatrixXd Gamma;
  int r = 1;
  double kappa = 0.0;
  double lambda = 0.0;
  std::vector<double> objective_trace;
  bool converged = false;
};

struct McvarFit {
  McvarState state;
  VarModel model;
};

/// Uniform deterministic initialization (d = kappa/K, g = 1/r) unless D0/G0
/// are supplied (columns must already satisfy the simplex constraints).
McvarFit fit_mcvar(const LagDesign& design, double lambda, double kappa, int r,
                   const AlternatingOptions& opts = {},
                   const Eigen::MatrixXd* D0 = nullptr, const Eigen::MatrixXd* G0 = nullptr);

/// Hard labels from the soft weights: label_k = argmax over rows of column k,
/// ties broken toward the lowest row index.  Labels are 1-based.
std::vector<int> cluster_assignments(const Eigen::MatrixXd& G);

}  // namespace leadvar
