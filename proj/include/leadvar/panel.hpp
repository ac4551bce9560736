#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leadvar {

enum class TransformKind { Difference, LogDifference, LogYoyGrowth, Zscore };

std::string to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& s);

/// Per-series normalization statistics (one entry per transformed series).
struct SeriesStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;
};

struct TransformSpec {
  TransformKind kind = TransformKind::Difference;
  int period = 1;                    // lag for differencing kinds
  std::optional<SeriesStats> stats;  // zscore: reuse training stats on holdout
  std::vector<std::string> series;   // empty = apply to all series
};

/// T x K observation matrix (rows = time) with series names and the
/// ordered list of transforms already applied to it.
struct TimeSeriesPanel {
  Eigen::MatrixXd values;
  std::vector<std::string> names;
  std::vector<TransformSpec> transform_log;

  Eigen::Index length() const { return values.rows(); }
  Eigen::Index n_series() const { return values.cols(); }

  // Throws std::invalid_argument on shape/name violations.
  void validate() const;
};

TimeSeriesPanel make_panel(Eigen::MatrixXd values, std::vector<std::string> names = {});

/// Paired (Y, X) regression matrices of a VAR(p).  Row t of X concatenates,
/// series by series, the p lagged values most recent first:
///   x_t = (y_{t-1,1}, ..., y_{t-p,1}, y_{t-1,2}, ..., y_{t-p,K})
struct LagDesign {
  Eigen::MatrixXd Y;  // T' x K
  Eigen::MatrixXd X;  // T' x Kp
  int p = 0;

  Eigen::Index n_rows() const { return Y.rows(); }
  Eigen::Index n_series() const { return Y.cols(); }
  // Column range of series b's p-column block in X.
  std::pair<Eigen::Index, Eigen::Index> block(Eigen::Index b) const {
    return {b * p, p};
  }
};

/// VAR parameter matrix, column k is the model of task k.
struct VarModel {
  Eigen::MatrixXd W;  // Kp x K
  int p = 0;
  std::vector<std::string> names;

  Eigen::Index n_series() const { return W.cols(); }
};

TimeSeriesPanel apply_transform(const TimeSeriesPanel& panel, const TransformSpec& spec);

LagDesign build_lag_design(const TimeSeriesPanel& panel, int p);

/// Chronological split; the holdout is the final n_holdout rows.
std::pair<TimeSeriesPanel, TimeSeriesPanel> split_holdout(const TimeSeriesPanel& panel,
                                                          int n_holdout);

/// Design over the holdout rows with the last p training rows prepended as
/// lag context, so every holdout point is forecastable.
LagDesign build_holdout_design(const TimeSeriesPanel& train, const TimeSeriesPanel& holdout,
                               int p);

}  // namespace leadvar
