#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

namespace leadvar {

struct PgdOptions {
  int max_iter = 500;
  double tol = 1e-8;       // relative objective change
  double beta = 0.5;       // backtracking shrink factor
  double armijo = 1e-4;    // sufficient-decrease constant
  double step_init = 1.0;

  void validate() const;
};

struct PgdResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Euclidean projection onto {x >= 0, sum(x) = kappa} by sort-and-threshold.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double kappa);

/// Exact minimizer of ||y - Zw||^2 + lambda ||w||^2 via LDLT of Z'Z + lambda I.
Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda);

/// Projected gradient descent with backtracking on an arbitrary smooth
/// objective; `project` must be the exact Euclidean projection onto the
/// feasible set.
PgdResult pgd_minimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                       const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
                       const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& project,
                       Eigen::VectorXd x0, const PgdOptions& opts);

/// minimize ||r - Hx||^2 s.t. x on the kappa-scaled simplex.
PgdResult pgd_simplex_ls(const Eigen::MatrixXd& H, const Eigen::VectorXd& r, double kappa,
                         Eigen::VectorXd x0, const PgdOptions& opts);

/// minimize 1/2 ||y - Xw||^2 + lambda ||w||_1 by cyclic coordinate descent.
Eigen::VectorXd lasso_cd(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                         int max_iter = 10000, double tol = 1e-10);

/// Column group (start, size); groups must partition the columns.
using ColumnGroups = std::vector<std::pair<Eigen::Index, Eigen::Index>>;

/// minimize 1/2 ||y - Xw||^2 + lambda sum_g ||w_g||_2 by block coordinate
/// descent with an exact per-block solve.
Eigen::VectorXd group_lasso_bcd(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                                const ColumnGroups& groups, int max_iter = 1000,
                                double tol = 1e-10);

}  // namespace leadvar
