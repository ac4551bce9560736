#include "leadvar/scvar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace leadvar {

Eigen::MatrixXd gamma_from_alpha(const Eigen::VectorXd& alpha_bar, double tau) {
  const Eigen::Index K = alpha_bar.size();
  Eigen::MatrixXd Gamma = alpha_bar.replicate(1, K);
  Gamma.diagonal().setConstant(tau);
  return Gamma;
}

VarModel assemble_w(const Eigen::MatrixXd& Gamma, const Eigen::MatrixXd& V, int p) {
  const Eigen::Index K = Gamma.rows();
  if (Gamma.cols() != K || V.rows() != K * p || V.cols() != K)
    throw std::invalid_argument("assemble_w: dimension mismatch");
  VarModel model;
  model.p = p;
  model.W.resize(K * p, K);
  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index b = 0; b < K; ++b)
      model.W.block(b * p, k, p, 1) = Gamma(b, k) * V.block(b * p, k, p, 1);
  return model;
}

double structured_loss(const LagDesign& design, const Eigen::MatrixXd& Gamma,
                       const Eigen::MatrixXd& V) {
  const Eigen::Index K = design.n_series();
  const Eigen::Index T = design.n_rows();
  const int p = design.p;
  double loss = 0.0;
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index t = 0; t < T; ++t) {
      double pred = 0.0;
      for (Eigen::Index b = 0; b < K; ++b)
        pred += Gamma(b, k) * design.X.row(t).segment(b * p, p).dot(V.col(k).segment(b * p, p));
      const double e = design.Y(t, k) - pred;
      loss += e * e;
    }
  }
  return loss;
}

Eigen::MatrixXd solve_v_given_gamma(const LagDesign& design, const Eigen::MatrixXd& Gamma,
                                    double lambda) {
  const Eigen::Index K = design.n_series();
  const int p = design.p;
  Eigen::MatrixXd V(K * p, K);
  Eigen::MatrixXd Z(design.n_rows(), K * p);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index b = 0; b < K; ++b)
      Z.middleCols(b * p, p) = Gamma(b, k) * design.X.middleCols(b * p, p);
    V.col(k) = ridge_solve(Z, design.Y.col(k), lambda);
  }
  return V;
}

BlockProducts block_products(const LagDesign& design, const Eigen::MatrixXd& V) {
  const Eigen::Index K = design.n_series();
  const Eigen::Index T = design.n_rows();
  const int p = design.p;
  BlockProducts out;
  out.H.reserve(K);
  out.R.resize(T, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    Eigen::MatrixXd Hk(T, K);
    for (Eigen::Index b = 0; b < K; ++b)
      Hk.col(b) = design.X.middleCols(b * p, p) * V.col(k).segment(b * p, p);
    out.R.col(k) = design.Y.col(k) - Hk.col(k);
    Hk.col(k).setZero();
    out.H.push_back(std::move(Hk));
  }
  return out;
}

ScvarFit fit_scvar(const LagDesign& design, double lambda, double kappa,
                   const AlternatingOptions& opts) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fit_scvar: lambda must be > 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("fit_scvar: kappa must be > 0");

  const Eigen::Index K = design.n_series();
  const Eigen::Index T = design.n_rows();
  const int p = design.p;

  ScvarState state;
  state.kappa = kappa;
  state.lambda = lambda;
  state.alpha_bar = Eigen::VectorXd::Constant(K, kappa / static_cast<double>(K));
  state.V = Eigen::MatrixXd::Zero(K * p, K);

  double prev_obj = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < opts.max_outer_iter; ++outer) {
    // Step 1: solve the ridge problem for V with Gamma fixed
    state.Gamma = gamma_from_alpha(state.alpha_bar, state.tau);
    state.V = solve_v_given_gamma(design, state.Gamma, lambda);

    // Step 2: solve the simplex-constrained problem for alpha_bar
    const BlockProducts bp = block_products(design, state.V);
    Eigen::MatrixXd H(K * T, K);
    Eigen::VectorXd r(K * T);
    for (Eigen::Index k = 0; k < K; ++k) {
      H.middleRows(k * T, T) = bp.H[k];
      r.segment(k * T, T) = bp.R.col(k);
    }
    const PgdResult pr = pgd_simplex_ls(H, r, kappa, state.alpha_bar, opts.pgd);
    state.alpha_bar = pr.x;
    state.Gamma = gamma_from_alpha(state.alpha_bar, state.tau);

    const double obj = (r - H * state.alpha_bar).squaredNorm() + lambda * state.V.squaredNorm();
    if (!std::isfinite(obj))
      throw std::runtime_error("fit_scvar: non-finite objective (check data scaling)");
    state.objective_trace.push_back(obj);
    if (std::isfinite(prev_obj) &&
        std::abs(prev_obj - obj) < opts.tol * (1.0 + std::abs(prev_obj))) {
      state.converged = true;
      break;
    }
    prev_obj = obj;
  }

  ScvarFit fit;
  fit.model = assemble_w(state.Gamma, state.V, p);
  fit.state = std::move(state);
  return fit;
}

}  // namespace leadvar
