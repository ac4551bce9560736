#pragma once

#include <Eigen/Dense>
#include <string>

#include "leadvar/panel.hpp"

namespace leadvar {

enum class BaselineKind { Mean, RandomWalk, Ar, LassoGranger, GroupLassoGranger };

std::string to_string(BaselineKind kind);
BaselineKind baseline_kind_from_string(const std::string& s);

struct BaselineModel {
  BaselineKind kind = BaselineKind::Mean;
  Eigen::MatrixXd W;      // Kp x K for ar/lg/glg, empty otherwise
  Eigen::VectorXd means;  // mean baseline only
  int p = 0;
  double lambda = 0.0;

  /// One-step-ahead predictions for every row of a lag design.
  Eigen::MatrixXd predict(const LagDesign& design) const;
};

BaselineModel fit_mean(const TimeSeriesPanel& train);
BaselineModel fit_random_walk(int p);
/// Per-series ridge autoregression on the series' own p lags.
BaselineModel fit_ar(const LagDesign& design, double lambda);
/// Lasso-Granger: per-task lasso on all Kp inputs.
BaselineModel fit_lg(const LagDesign& design, double lambda);
/// Grouped-lasso-Granger: per-task group lasso with the K lag blocks as groups.
BaselineModel fit_glg(const LagDesign& design, double lambda);

/// One-step-ahead forecast from the p most recent panel rows (chronological,
/// most recent last).
Eigen::VectorXd forecast_baseline(const BaselineModel& model, const Eigen::MatrixXd& context);

}  // namespace leadvar
