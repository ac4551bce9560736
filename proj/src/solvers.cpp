#include "leadvar/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leadvar {

void PgdOptions::validate() const {
  if (max_iter < 1) throw std::invalid_argument("PgdOptions.max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("PgdOptions.tol must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("PgdOptions.beta must be in (0,1)");
  if (!(armijo > 0.0 && armijo < 1.0))
    throw std::invalid_argument("PgdOptions.armijo must be in (0,1)");
  if (!(step_init > 0.0)) throw std::invalid_argument("PgdOptions.step_init must be > 0");
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double kappa) {
  if (v.size() < 1) throw std::invalid_argument("project_simplex: empty vector");
  if (!(kappa > 0.0)) throw std::invalid_argument("project_simplex: kappa must be > 0");
  if (!v.allFinite()) throw std::invalid_argument("project_simplex: non-finite input");

  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());

  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double cand = (cumsum - kappa) / static_cast<double>(j + 1);
    if (u[j] - cand > 0.0) theta = cand;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda) {
  if (Z.rows() != y.size()) throw std::invalid_argument("ridge_solve: dimension mismatch");
  if (lambda < 0.0) throw std::invalid_argument("ridge_solve: lambda must be >= 0");

  const Eigen::Index d = Z.cols();
  Eigen::MatrixXd A = Z.transpose() * Z;
  A.diagonal().array() += lambda;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("ridge_solve: factorization failed (singular system?)");
  Eigen::VectorXd w = ldlt.solve(Z.transpose() * y);
  if (!w.allFinite())
    throw std::runtime_error("ridge_solve: singular system, increase lambda");
  (void)d;
  return w;
}

PgdResult pgd_minimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                       const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
                       const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& project,
                       Eigen::VectorXd x0, const PgdOptions& opts) {
  opts.validate();
  PgdResult res;
  Eigen::VectorXd x = project(std::move(x0));
  double f = objective(x);
  double step = opts.step_init;

  for (int it = 0; it < opts.max_iter; ++it) {
    const Eigen::VectorXd g = gradient(x);
    Eigen::VectorXd x_next;
    double f_next = f;
    bool accepted = false;
    // backtracking: shrink until the Armijo sufficient-decrease condition
    // along the projected step holds
    for (int ls = 0; ls < 60; ++ls) {
      x_next = project(x - step * g);
      const Eigen::VectorXd d = x_next - x;
      const double dnorm = d.norm();
      if (dnorm <= 1e-15 * (1.0 + x.norm())) {
        accepted = false;
        break;  // stationary
      }
      f_next = objective(x_next);
      if (f_next <= f + opts.armijo * g.dot(d)) {
        accepted = true;
        break;
      }
      step *= opts.beta;
    }
    if (!accepted) {
      res.converged = true;
      break;
    }
    const double rel_change = std::abs(f - f_next) / (1.0 + std::abs(f));
    x.swap(x_next);
    f = f_next;
    res.iterations = it + 1;
    step /= opts.beta;  // allow the step to grow back
    if (rel_change < opts.tol) {
      res.converged = true;
      break;
    }
  }
  res.x = std::move(x);
  res.objective = f;
  return res;
}

PgdResult pgd_simplex_ls(const Eigen::MatrixXd& H, const Eigen::VectorXd& r, double kappa,
                         Eigen::VectorXd x0, const PgdOptions& opts) {
  if (H.rows() != r.size()) throw std::invalid_argument("pgd_simplex_ls: dimension mismatch");
  if (x0.size() != H.cols()) throw std::invalid_argument("pgd_simplex_ls: x0 size mismatch");

  const auto objective = [&](const Eigen::VectorXd& x) { return (r - H * x).squaredNorm(); };
  const auto gradient = [&](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(-2.0 * (H.transpose() * (r - H * x)));
  };
  const auto project = [kappa](const Eigen::VectorXd& x) { return project_simplex(x, kappa); };
  return pgd_minimize(objective, gradient, project, std::move(x0), opts);
}

namespace {

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

Eigen::VectorXd lasso_cd(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                         int max_iter, double tol) {
  if (X.rows() != y.size()) throw std::invalid_argument("lasso_cd: dimension mismatch");
  if (!(lambda > 0.0)) throw std::invalid_argument("lasso_cd: lambda must be > 0");

  const Eigen::Index d = X.cols();
  Eigen::VectorXd colsq(d);
  for (Eigen::Index j = 0; j < d; ++j) colsq[j] = X.col(j).squaredNorm();

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd res = y;
  for (int it = 0; it < max_iter; ++it) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (colsq[j] <= 0.0) continue;  // zero column keeps weight 0
      const double old = w[j];
      const double rho = X.col(j).dot(res) + colsq[j] * old;
      const double next = soft_threshold(rho, lambda) / colsq[j];
      if (next != old) {
        res += X.col(j) * (old - next);
        w[j] = next;
        max_delta = std::max(max_delta, std::abs(next - old));
      }
    }
    if (max_delta < tol * (1.0 + w.cwiseAbs().maxCoeff())) break;
  }
  return w;
}

namespace {

// Exact solve of min_w 1/2||r - B w||^2 + lambda ||w||_2 for one block.
// Nonzero solutions satisfy w = (B'B + nu I)^{-1} B'r with nu = lambda/||w||;
// nu * ||(B'B + nu I)^{-1} B'r|| is increasing in nu, so bisect on it.
Eigen::VectorXd group_solve(const Eigen::MatrixXd& B, const Eigen::VectorXd& r, double lambda) {
  const Eigen::VectorXd c = B.transpose() * r;
  const double cnorm = c.norm();
  if (cnorm <= lambda) return Eigen::VectorXd::Zero(B.cols());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B.transpose() * B);
  const Eigen::VectorXd evals = es.eigenvalues();
  const Eigen::VectorXd cq = es.eigenvectors().transpose() * c;

  const auto phi = [&](double nu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < cq.size(); ++i) {
      const double t = cq[i] / (evals[i] + nu);
      s += t * t;
    }
    return nu * std::sqrt(s);
  };

  double lo = 0.0, hi = 1.0;
  while (phi(hi) < lambda) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < lambda ? lo : hi) = mid;
    if (hi - lo < 1e-15 * (1.0 + hi)) break;
  }
  const double nu = 0.5 * (lo + hi);
  Eigen::VectorXd wq = cq.array() / (evals.array() + nu);
  return es.eigenvectors() * wq;
}

}  // namespace

Eigen::VectorXd group_lasso_bcd(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                                const ColumnGroups& groups, int max_iter, double tol) {
  if (X.rows() != y.size()) throw std::invalid_argument("group_lasso_bcd: dimension mismatch");
  if (!(lambda > 0.0)) throw std::invalid_argument("group_lasso_bcd: lambda must be > 0");
  Eigen::Index covered = 0;
  for (const auto& [start, size] : groups) {
    if (size < 1) throw std::invalid_argument("group_lasso_bcd: empty group");
    if (start < 0 || start + size > X.cols())
      throw std::invalid_argument("group_lasso_bcd: group out of range");
    covered += size;
  }
  if (covered != X.cols())
    throw std::invalid_argument("group_lasso_bcd: groups must partition the columns");

  Eigen::VectorXd w = Eigen::VectorXd::Zero(X.cols());
  Eigen::VectorXd res = y;
  for (int it = 0; it < max_iter; ++it) {
    double max_delta = 0.0;
    for (const auto& [start, size] : groups) {
      const auto B = X.middleCols(start, size);
      const Eigen::VectorXd w_old = w.segment(start, size);
      const Eigen::VectorXd r_partial = res + B * w_old;
      const Eigen::VectorXd w_new = group_solve(B, r_partial, lambda);
      res = r_partial - B * w_new;
      w.segment(start, size) = w_new;
      max_delta = std::max(max_delta, (w_new - w_old).cwiseAbs().maxCoeff());
    }
    if (max_delta < tol * (1.0 + w.cwiseAbs().maxCoeff())) break;
  }
  return w;
}

}  // namespace leadvar
