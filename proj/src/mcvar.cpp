#include "leadvar/mcvar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace leadvar {

namespace {

Eigen::MatrixXd gamma_from_a(const Eigen::MatrixXd& A) {
  Eigen::MatrixXd Gamma = A;
  Gamma.diagonal().setOnes();  // tau = 1 replaces diag(A)
  return Gamma;
}

}  // namespace

McvarFit fit_mcvar(const LagDesign& design, double lambda, double kappa, int r,
                   const AlternatingOptions& opts, const Eigen::MatrixXd* D0,
                   const Eigen::MatrixXd* G0) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fit_mcvar: lambda must be > 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("fit_mcvar: kappa must be > 0");
  const Eigen::Index K = design.n_series();
  if (r < 1 || r > K) throw std::invalid_argument("fit_mcvar: rank r out of range [1, K]");
  const Eigen::Index T = design.n_rows();
  const int p = design.p;

  McvarState state;
  state.r = r;
  state.kappa = kappa;
  state.lambda = lambda;
  state.D = Eigen::MatrixXd::Constant(K, r, kappa / static_cast<double>(K));
  state.G = Eigen::MatrixXd::Constant(r, K, 1.0 / static_cast<double>(r));
  if (r > 1 && !G0) {
    // The perfectly uniform start is a fixed point of the alternating
    // updates (all prototype columns stay identical), so tilt each task
    // slightly toward one prototype, in contiguous groups of tasks.
    constexpr double eps = 0.05;
    for (Eigen::Index k = 0; k < K; ++k) {
      state.G((k * r) / K, k) += eps;
      state.G.col(k) /= state.G.col(k).sum();
    }
  }
  if (D0) {
    if (D0->rows() != K || D0->cols() != r) throw std::invalid_argument("fit_mcvar: D0 shape");
    state.D = *D0;
  }
  if (G0) {
    if (G0->rows() != r || G0->cols() != K) throw std::invalid_argument("fit_mcvar: G0 shape");
    state.G = *G0;
  }

  double prev_obj = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < opts.max_outer_iter; ++outer) {
    // Step 1: solve for V with Gamma fixed
    state.Gamma = gamma_from_a(state.D * state.G);
    state.V = solve_v_given_gamma(design, state.Gamma, lambda);

    const BlockProducts bp = block_products(design, state.V);

    // Step 2a: per-task unit-simplex fit for the columns of G
    for (Eigen::Index k = 0; k < K; ++k) {
      const Eigen::MatrixXd M = bp.H[k] * state.D;  // T' x r
      const PgdResult pr = pgd_simplex_ls(M, bp.R.col(k), 1.0, state.G.col(k), opts.pgd);
      state.G.col(k) = pr.x;
    }

    // Step 2b: joint projected gradient over D with per-column
    // kappa-simplex projection (exact projection onto the product set)
    const auto as_matrix = [&](const Eigen::VectorXd& v) {
      return Eigen::Map<const Eigen::MatrixXd>(v.data(), K, r);
    };
    const auto objective = [&](const Eigen::VectorXd& v) {
      const auto D = as_matrix(v);
      double f = 0.0;
      for (Eigen::Index k = 0; k < K; ++k)
        f += (bp.R.col(k) - bp.H[k] * (D * state.G.col(k))).squaredNorm();
      return f;
    };
    const auto gradient = [&](const Eigen::VectorXd& v) {
      const auto D = as_matrix(v);
      Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(K, r);
      for (Eigen::Index k = 0; k < K; ++k) {
        const Eigen::VectorXd res = bp.R.col(k) - bp.H[k] * (D * state.G.col(k));
        grad.noalias() -= 2.0 * (bp.H[k].transpose() * res) * state.G.col(k).transpose();
      }
      return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(grad.data(), K * r));
    };
    const auto project = [&](const Eigen::VectorXd& v) {
      Eigen::MatrixXd D = as_matrix(v);
      for (Eigen::Index j = 0; j < r; ++j) D.col(j) = project_simplex(D.col(j), kappa);
      return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(D.data(), K * r));
    };
    Eigen::VectorXd d0 = Eigen::Map<Eigen::VectorXd>(state.D.data(), K * r);
    const PgdResult pr = pgd_minimize(objective, gradient, project, std::move(d0), opts.pgd);
    state.D = Eigen::Map<const Eigen::MatrixXd>(pr.x.data(), K, r);

    state.Gamma = gamma_from_a(state.D * state.G);
    const double obj = pr.objective + lambda * state.V.squaredNorm();
    if (!std::isfinite(obj))
      throw std::runtime_error("fit_mcvar: non-finite objective (check data scaling)");
    state.objective_trace.push_back(obj);
    if (std::isfinite(prev_obj) &&
        std::abs(prev_obj - obj) < opts.tol * (1.0 + std::abs(prev_obj))) {
      state.converged = true;
      break;
    }
    prev_obj = obj;
  }
  (void)T;

  McvarFit fit;
  fit.model = assemble_w(state.Gamma, state.V, p);
  fit.state = std::move(state);
  return fit;
}

std::vector<int> cluster_assignments(const Eigen::MatrixXd& G) {
  std::vector<int> labels;
  labels.reserve(G.cols());
  for (Eigen::Index k = 0; k < G.cols(); ++k) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < G.rows(); ++j)
      if (G(j, k) > G(best, k)) best = j;
    labels.push_back(static_cast<int>(best) + 1);
  }
  return labels;
}

}  // namespace leadvar
