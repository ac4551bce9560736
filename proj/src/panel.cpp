#include "leadvar/panel.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace leadvar {

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Difference: return "difference";
    case TransformKind::LogDifference: return "log_difference";
    case TransformKind::LogYoyGrowth: return "log_yoy_growth";
    case TransformKind::Zscore: return "zscore";
  }
  throw std::logic_error("unknown TransformKind");
}

TransformKind transform_kind_from_string(const std::string& s) {
  if (s == "difference") return TransformKind::Difference;
  if (s == "log_difference") return TransformKind::LogDifference;
  if (s == "log_yoy_growth") return TransformKind::LogYoyGrowth;
  if (s == "zscore") return TransformKind::Zscore;
  throw std::invalid_argument("unknown transform kind: " + s);
}

void TimeSeriesPanel::validate() const {
  if (values.rows() < 1) throw std::invalid_argument("panel must have at least one row");
  if (values.cols() < 1) throw std::invalid_argument("panel must have at least one series");
  if (static_cast<Eigen::Index>(names.size()) != values.cols())
    throw std::invalid_argument("panel names/columns mismatch");
  std::set<std::string> seen(names.begin(), names.end());
  if (static_cast<Eigen::Index>(seen.size()) != values.cols())
    throw std::invalid_argument("panel series names must be unique");
  if (!values.allFinite()) throw std::invalid_argument("panel contains non-finite values");
}

TimeSeriesPanel make_panel(Eigen::MatrixXd values, std::vector<std::string> names) {
  TimeSeriesPanel panel;
  panel.values = std::move(values);
  if (names.empty()) {
    for (Eigen::Index k = 0; k < panel.values.cols(); ++k)
      names.push_back("s" + std::to_string(k + 1));
  }
  panel.names = std::move(names);
  panel.validate();
  return panel;
}

namespace {

std::vector<Eigen::Index> resolve_columns(const TimeSeriesPanel& panel,
                                          const std::vector<std::string>& series) {
  std::vector<Eigen::Index> cols;
  if (series.empty()) {
    for (Eigen::Index k = 0; k < panel.n_series(); ++k) cols.push_back(k);
    return cols;
  }
  for (const auto& name : series) {
    bool found = false;
    for (Eigen::Index k = 0; k < panel.n_series(); ++k) {
      if (panel.names[k] == name) {
        cols.push_back(k);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("transform references unknown series: " + name);
  }
  return cols;
}

bool is_log_kind(TransformKind kind) {
  return kind == TransformKind::LogDifference || kind == TransformKind::LogYoyGrowth;
}

}  // namespace

TimeSeriesPanel apply_transform(const TimeSeriesPanel& panel, const TransformSpec& spec) {
  panel.validate();
  if (spec.period < 1) throw std::invalid_argument("transform period must be >= 1");
  const auto cols = resolve_columns(panel, spec.series);
  const Eigen::Index T = panel.length();

  TimeSeriesPanel out;
  out.names = panel.names;
  out.transform_log = panel.transform_log;
  TransformSpec logged = spec;

  if (spec.kind == TransformKind::Zscore) {
    SeriesStats stats;
    if (spec.stats) {
      stats = *spec.stats;
      if (stats.mean.size() != static_cast<Eigen::Index>(cols.size()) ||
          stats.sd.size() != static_cast<Eigen::Index>(cols.size()))
        throw std::invalid_argument("zscore stats size must match transformed series count");
    } else {
      stats.mean.resize(cols.size());
      stats.sd.resize(cols.size());
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const auto col = panel.values.col(cols[i]);
        const double mean = col.mean();
        const double var = (col.array() - mean).square().sum() / std::max<Eigen::Index>(T - 1, 1);
        stats.mean[i] = mean;
        stats.sd[i] = std::sqrt(var);
      }
    }
    for (Eigen::Index i = 0; i < stats.sd.size(); ++i)
      if (!(stats.sd[i] > 0.0)) throw std::invalid_argument("zscore requires sd > 0");

    out.values = panel.values;
    for (std::size_t i = 0; i < cols.size(); ++i)
      out.values.col(cols[i]) = (panel.values.col(cols[i]).array() - stats.mean[i]) / stats.sd[i];
    logged.stats = stats;  // recorded so a replay reproduces the output exactly
    out.transform_log.push_back(logged);
    out.validate();
    return out;
  }

  // Differencing kinds shrink the panel by `period` rows; untransformed
  // series drop their first `period` rows to stay time-aligned.
  const int d = spec.period;
  if (d >= T) throw std::invalid_argument("transform period must be < panel length");

  if (is_log_kind(spec.kind)) {
    for (const auto c : cols)
      if ((panel.values.col(c).array() <= 0.0).any())
        throw std::invalid_argument("log transform requires strictly positive values in series " +
                                    panel.names[c]);
  }

  out.values = panel.values.bottomRows(T - d);
  for (const auto c : cols) {
    for (Eigen::Index t = 0; t < T - d; ++t) {
      const double cur = panel.values(t + d, c);
      const double prev = panel.values(t, c);
      out.values(t, c) = is_log_kind(spec.kind) ? std::log(cur) - std::log(prev) : cur - prev;
    }
  }
  out.transform_log.push_back(logged);
  out.validate();
  return out;
}

LagDesign build_lag_design(const TimeSeriesPanel& panel, int p) {
  panel.validate();
  if (p < 1) throw std::invalid_argument("lag order p must be >= 1");
  const Eigen::Index T = panel.length();
  const Eigen::Index K = panel.n_series();
  if (T <= p) throw std::invalid_argument("panel length must exceed lag order");

  LagDesign design;
  design.p = p;
  const Eigen::Index rows = T - p;
  design.Y = panel.values.bottomRows(rows);
  design.X.resize(rows, K * p);
  for (Eigen::Index t = 0; t < rows; ++t)
    for (Eigen::Index b = 0; b < K; ++b)
      for (int j = 0; j < p; ++j)
        design.X(t, b * p + j) = panel.values(p + t - 1 - j, b);
  return design;
}

std::pair<TimeSeriesPanel, TimeSeriesPanel> split_holdout(const TimeSeriesPanel& panel,
                                                          int n_holdout) {
  panel.validate();
  if (n_holdout < 1) throw std::invalid_argument("n_holdout must be >= 1");
  if (n_holdout >= panel.length())
    throw std::invalid_argument("n_holdout must be smaller than the panel length");

  TimeSeriesPanel train = panel;
  TimeSeriesPanel holdout = panel;
  train.values = panel.values.topRows(panel.length() - n_holdout);
  holdout.values = panel.values.bottomRows(n_holdout);
  return {std::move(train), std::move(holdout)};
}

LagDesign build_holdout_design(const TimeSeriesPanel& train, const TimeSeriesPanel& holdout,
                               int p) {
  if (p < 1) throw std::invalid_argument("lag order p must be >= 1");
  if (train.length() < p)
    throw std::invalid_argument("training panel too short to supply lag context");
  if (train.n_series() != holdout.n_series())
    throw std::invalid_argument("train/holdout series count mismatch");

  TimeSeriesPanel padded = holdout;
  padded.values.resize(p + holdout.length(), holdout.n_series());
  padded.values.topRows(p) = train.values.bottomRows(p);
  padded.values.bottomRows(holdout.length()) = holdout.values;
  return build_lag_design(padded, p);
}

}  // namespace leadvar
