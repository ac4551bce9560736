#include "leadvar/evaluate.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace leadvar {

std::string to_string(TestOutcome o) {
  switch (o) {
    case TestOutcome::Better: return "+";
    case TestOutcome::Worse: return "-";
    case TestOutcome::Equal: return "=";
  }
  throw std::logic_error("unknown TestOutcome");
}

Eigen::VectorXd forecast_one_step(const VarModel& model, const Eigen::VectorXd& lag_row) {
  if (lag_row.size() != model.W.rows())
    throw std::invalid_argument("forecast_one_step: lag row size mismatch");
  return model.W.transpose() * lag_row;
}

MseResult holdout_mse(const Eigen::MatrixXd& predictions, const Eigen::MatrixXd& actual) {
  if (predictions.rows() != actual.rows() || predictions.cols() != actual.cols())
    throw std::invalid_argument("holdout_mse: shape mismatch");
  if (actual.rows() < 1) throw std::invalid_argument("holdout_mse: empty holdout");

  const Eigen::MatrixXd sq = (actual - predictions).array().square();
  MseResult res;
  res.per_series = sq.colwise().mean();
  res.per_time = sq.rowwise().mean();
  res.mse = res.per_series.mean();
  return res;
}

MseResult holdout_mse(const VarModel& model, const LagDesign& holdout_design) {
  return holdout_mse(Eigen::MatrixXd(holdout_design.X * model.W), holdout_design.Y);
}

double relative_mse(double mse, double mse_reference) {
  if (!(mse_reference > 0.0)) throw std::invalid_argument("relative_mse: reference must be > 0");
  return mse / mse_reference;
}

namespace {

// Continued-fraction evaluation of the regularized incomplete beta I_x(a, b)
// (modified Lentz), standard series from Abramowitz & Stegun 26.5.8.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_sf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("student_t_sf: df must be > 0");
  const double x = df / (df + t * t);
  const double half_tail = 0.5 * inc_beta(0.5 * df, 0.5, x);
  return t >= 0.0 ? half_tail : 1.0 - half_tail;
}

TestOutcome paired_ttest_onesided(const Eigen::VectorXd& errors_a, const Eigen::VectorXd& errors_b,
                                  double alpha) {
  const Eigen::Index n = errors_a.size();
  if (errors_b.size() != n) throw std::invalid_argument("paired_ttest_onesided: size mismatch");
  if (n < 2) throw std::invalid_argument("paired_ttest_onesided: need at least 2 pairs");

  const Eigen::VectorXd d = errors_b - errors_a;  // positive mean favours a
  const double mean = d.mean();
  const double var = (d.array() - mean).square().sum() / static_cast<double>(n - 1);
  if (var <= 0.0) {
    // degenerate zero-variance differences: decided by the sign of the mean
    if (mean > 0.0) return TestOutcome::Better;
    if (mean < 0.0) return TestOutcome::Worse;
    return TestOutcome::Equal;
  }
  const double t = mean / std::sqrt(var / static_cast<double>(n));
  const double df = static_cast<double>(n - 1);
  if (student_t_sf(t, df) < alpha) return TestOutcome::Better;
  if (student_t_sf(-t, df) < alpha) return TestOutcome::Worse;
  return TestOutcome::Equal;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  if (b.size() != n || n < 2) throw std::invalid_argument("adjusted_rand_index: bad input");

  std::map<std::pair<int, int>, long long> cell;
  std::map<int, long long> row, col;
  for (std::size_t i = 0; i < n; ++i) {
    ++cell[{a[i], b[i]}];
    ++row[a[i]];
    ++col[b[i]];
  }
  const auto choose2 = [](long long m) { return m * (m - 1) / 2.0; };
  double sum_cell = 0.0, sum_row = 0.0, sum_col = 0.0;
  for (const auto& [key, m] : cell) sum_cell += choose2(m);
  for (const auto& [key, m] : row) sum_row += choose2(m);
  for (const auto& [key, m] : col) sum_col += choose2(m);
  const double total = choose2(static_cast<long long>(n));
  const double expected = sum_row * sum_col / total;
  const double max_index = 0.5 * (sum_row + sum_col);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (sum_cell - expected) / (max_index - expected);
}

EvalReport evaluate_model(const VarModel& model, const LagDesign& holdout_design,
                          double reference_mse, const GrangerGraph* truth,
                          double edge_threshold) {
  const MseResult mse = holdout_mse(model, holdout_design);
  const GrangerGraph g = granger_graph_from_w(model, edge_threshold);
  const GraphStats stats = graph_stats(g);

  EvalReport report;
  report.per_series_mse = mse.per_series;
  report.mse = mse.mse;
  report.relative_mse = relative_mse(mse.mse, reference_mse);
  report.n_edges = stats.n_edges;
  report.n_leading = stats.n_leading;
  report.out_degree = stats.out_degree;
  if (truth) report.granger_accuracy = granger_accuracy(g, *truth);
  return report;
}

}  // namespace leadvar
