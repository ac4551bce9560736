#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leadvar/baselines.hpp"
#include "leadvar/cv.hpp"
#include "leadvar/evaluate.hpp"
#include "leadvar/mcvar.hpp"
#include "leadvar/scvar.hpp"

namespace leadvar {

enum class Method { Mean, RandomWalk, Ar, Lg, Glg, Scvar, Mcvar };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct FittedMethod {
  Method method = Method::Mean;
  BaselineModel baseline;       // mean/rw only
  VarModel model;               // W-based methods
  HyperParams params;
  std::vector<double> objective_trace;  // scvar/mcvar
  std::optional<ScvarState> scvar_state;
  std::optional<McvarState> mcvar_state;

  bool has_w() const { return method != Method::Mean && method != Method::RandomWalk; }
};

/// Fits one method, selecting hyperparameters by inner CV where the method
/// has any.  `train` is the training panel; designs are built at lag p.
FittedMethod fit_method_cv(const TimeSeriesPanel& train, Method method, int p, const Grid& grid,
                           int folds = 5, CvResult* cv_out = nullptr);

/// Fixed-hyperparameter fit (no CV).
FittedMethod fit_method(const TimeSeriesPanel& train, Method method, int p,
                        const HyperParams& params, const AlternatingOptions& opts = {});

Eigen::MatrixXd predict_holdout(const FittedMethod& fitted, const LagDesign& holdout_design);

struct SweepCellResult {
  Method method = Method::Mean;
  int train_size = 0;
  double mse = 0.0;
  double rel_mse = 0.0;
  std::optional<double> granger_acc;
  int n_edges = 0;
  int n_leading = 0;
  HyperParams params;
  std::string significance;  // scvar/mcvar: one +/-/= per competitor, row order
  Eigen::VectorXd per_time_errors;
};

struct SweepConfig {
  std::vector<int> train_sizes;
  std::vector<Method> methods = {Method::Mean, Method::RandomWalk, Method::Ar,
                                 Method::Lg,   Method::Glg,        Method::Scvar,
                                 Method::Mcvar};
  int p = 3;
  int folds = 5;
  Grid grid;
  int n_threads = 0;  // 0 = hardware concurrency
};

/// Training-size sweep over one generated dataset.  `full_train` supplies the
/// largest training window (each size takes its most recent rows), and
/// reference_mse is the relative-MSE denominator (true-model or RW holdout
/// MSE).  Significance flags compare scvar/mcvar against the other methods in
/// the configured row order.
std::vector<SweepCellResult> run_sweep(const TimeSeriesPanel& full_train,
                                       const TimeSeriesPanel& holdout, double reference_mse,
                                       const SweepConfig& cfg,
                                       const GrangerGraph* truth = nullptr);

}  // namespace leadvar
