#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "leadvar/granger.hpp"
#include "leadvar/panel.hpp"

namespace leadvar {

struct MseResult {
  Eigen::VectorXd per_series;  // K
  Eigen::VectorXd per_time;    // T', squared error averaged across series
  double mse = 0.0;            // average of per_series
};

enum class TestOutcome { Better, Worse, Equal };
std::string to_string(TestOutcome o);

struct EvalReport {
  Eigen::VectorXd per_series_mse;
  double mse = 0.0;
  double relative_mse = 0.0;
  std::optional<double> granger_accuracy;
  int n_edges = 0;
  int n_leading = 0;
  std::vector<int> out_degree;
};

Eigen::VectorXd forecast_one_step(const VarModel& model, const Eigen::VectorXd& lag_row);

MseResult holdout_mse(const VarModel& model, const LagDesign& holdout_design);
MseResult holdout_mse(const Eigen::MatrixXd& predictions, const Eigen::MatrixXd& actual);

double relative_mse(double mse, double mse_reference);

/// Upper-tail probability P(T > t) of Student's t with df degrees of freedom,
/// via the regularized incomplete beta function.
double student_t_sf(double t, double df);

/// One-sided paired t-test on the per-point errors; Better means a's errors
/// are significantly smaller than b's at level alpha.
TestOutcome paired_ttest_onesided(const Eigen::VectorXd& errors_a, const Eigen::VectorXd& errors_b,
                                  double alpha = 0.05);

/// Adjusted Rand index between two hard labelings.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

EvalReport evaluate_model(const VarModel& model, const LagDesign& holdout_design,
                          double reference_mse, const GrangerGraph* truth = nullptr,
                          double edge_threshold = 1e-6);

}  // namespace leadvar
