#pragma once

#include <Eigen/Dense>
#include <vector>

#include "leadvar/panel.hpp"
#include "leadvar/solvers.hpp"

namespace leadvar {

/// State of the SingleCluster-VAR alternating fit.  Gamma gates per-block
/// contributions: Gamma = A - diag(A) + tau I with every column of A equal
/// to alpha_bar, tau fixed at 1 for identifiability.
struct ScvarState {
  Eigen::VectorXd alpha_bar;  // K, on the kappa-scaled simplex
  Eigen::MatrixXd V;          // Kp x K raw weights
  Eigen::MatrixXd Gamma;      // K x K structural weights
  double tau = 1.0;
  double kappa = 0.0;
  double lambda = 0.0;
  std::vector<double> objective_trace;  // penalized objective per outer iteration
  bool converged = false;
};

struct ScvarFit {
  ScvarState state;
  VarModel model;
};

struct AlternatingOptions {
  int max_outer_iter = 200;
  double tol = 1e-6;  // relative penalized-objective change
  PgdOptions pgd;
};

Eigen::MatrixXd gamma_from_alpha(const Eigen::VectorXd& alpha_bar, double tau);

/// W block (b,k) = Gamma(b,k) * V block (b,k).
VarModel assemble_w(const Eigen::MatrixXd& Gamma, const Eigen::MatrixXd& V, int p);

/// Squared-error loss of the (Gamma, V) parametrization, summed over rows
/// and tasks (no penalty term).
double structured_loss(const LagDesign& design, const Eigen::MatrixXd& Gamma,
                       const Eigen::MatrixXd& V);

/// Ridge step shared by SCVAR and MCVAR: per task k, re-weight the input
/// blocks by column k of Gamma and solve the ridge problem for column k of V.
Eigen::MatrixXd solve_v_given_gamma(const LagDesign& design, const Eigen::MatrixXd& Gamma,
                                    double lambda);

/// Block products h_{t,b,k} = <v_block(b,k), x_block(t,b)> and the own-history
/// residuals r_{t,k} = y_{t,k} - h_{t,k,k}.  H[k] has its k-th column zeroed.
struct BlockProducts {
  std::vector<Eigen::MatrixXd> H;  // K matrices, each T' x K
  Eigen::MatrixXd R;               // T' x K
};
BlockProducts block_products(const LagDesign& design, const Eigen::MatrixXd& V);

ScvarFit fit_scvar(const LagDesign& design, double lambda, double kappa,
                   const AlternatingOptions& opts = {});

}  // namespace leadvar
