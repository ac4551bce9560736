#include "leadvar/baselines.hpp"

#include <stdexcept>

#include "leadvar/solvers.hpp"

namespace leadvar {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::Mean: return "mean";
    case BaselineKind::RandomWalk: return "rw";
    case BaselineKind::Ar: return "ar";
    case BaselineKind::LassoGranger: return "lg";
    case BaselineKind::GroupLassoGranger: return "glg";
  }
  throw std::logic_error("unknown BaselineKind");
}

BaselineKind baseline_kind_from_string(const std::string& s) {
  if (s == "mean") return BaselineKind::Mean;
  if (s == "rw") return BaselineKind::RandomWalk;
  if (s == "ar") return BaselineKind::Ar;
  if (s == "lg") return BaselineKind::LassoGranger;
  if (s == "glg") return BaselineKind::GroupLassoGranger;
  throw std::invalid_argument("unknown baseline kind: " + s);
}

Eigen::MatrixXd BaselineModel::predict(const LagDesign& design) const {
  const Eigen::Index T = design.n_rows();
  const Eigen::Index K = design.n_series();
  switch (kind) {
    case BaselineKind::Mean:
      if (means.size() != K) throw std::invalid_argument("mean baseline: series mismatch");
      return means.transpose().replicate(T, 1);
    case BaselineKind::RandomWalk: {
      // prediction of y_t is y_{t-1}: the first (most recent) lag of each block
      Eigen::MatrixXd pred(T, K);
      for (Eigen::Index b = 0; b < K; ++b) pred.col(b) = design.X.col(b * design.p);
      return pred;
    }
    default:
      if (W.rows() != design.X.cols()) throw std::invalid_argument("baseline: lag-design mismatch");
      return design.X * W;
  }
}

BaselineModel fit_mean(const TimeSeriesPanel& train) {
  train.validate();
  BaselineModel model;
  model.kind = BaselineKind::Mean;
  model.means = train.values.colwise().mean();
  return model;
}

BaselineModel fit_random_walk(int p) {
  BaselineModel model;
  model.kind = BaselineKind::RandomWalk;
  model.p = p;
  return model;
}

BaselineModel fit_ar(const LagDesign& design, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fit_ar: lambda must be > 0");
  const Eigen::Index K = design.n_series();
  const int p = design.p;
  BaselineModel model;
  model.kind = BaselineKind::Ar;
  model.p = p;
  model.lambda = lambda;
  model.W = Eigen::MatrixXd::Zero(K * p, K);
  for (Eigen::Index k = 0; k < K; ++k)
    model.W.block(k * p, k, p, 1) = ridge_solve(design.X.middleCols(k * p, p), design.Y.col(k), lambda);
  return model;
}

BaselineModel fit_lg(const LagDesign& design, double lambda) {
  const Eigen::Index K = design.n_series();
  BaselineModel model;
  model.kind = BaselineKind::LassoGranger;
  model.p = design.p;
  model.lambda = lambda;
  model.W.resize(design.X.cols(), K);
  for (Eigen::Index k = 0; k < K; ++k)
    model.W.col(k) = lasso_cd(design.X, design.Y.col(k), lambda);
  return model;
}

BaselineModel fit_glg(const LagDesign& design, double lambda) {
  const Eigen::Index K = design.n_series();
  const int p = design.p;
  ColumnGroups groups;
  for (Eigen::Index b = 0; b < K; ++b) groups.emplace_back(b * p, p);
  BaselineModel model;
  model.kind = BaselineKind::GroupLassoGranger;
  model.p = p;
  model.lambda = lambda;
  model.W.resize(design.X.cols(), K);
  for (Eigen::Index k = 0; k < K; ++k)
    model.W.col(k) = group_lasso_bcd(design.X, design.Y.col(k), lambda, groups);
  return model;
}

Eigen::VectorXd forecast_baseline(const BaselineModel& model, const Eigen::MatrixXd& context) {
  const Eigen::Index K = context.cols();
  switch (model.kind) {
    case BaselineKind::Mean:
      if (model.means.size() != K) throw std::invalid_argument("mean baseline: series mismatch");
      return model.means;
    case BaselineKind::RandomWalk:
      if (context.rows() < 1) throw std::invalid_argument("rw forecast needs at least one row");
      return context.row(context.rows() - 1);
    default: {
      const int p = model.p;
      if (context.rows() < p) throw std::invalid_argument("forecast needs p context rows");
      Eigen::VectorXd lag_row(K * p);
      for (Eigen::Index b = 0; b < K; ++b)
        for (int j = 0; j < p; ++j)
          lag_row[b * p + j] = context(context.rows() - 1 - j, b);
      return model.W.transpose() * lag_row;
    }
  }
}

}  // namespace leadvar
