#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "leadvar/evaluate.hpp"
#include "leadvar/simulate.hpp"

using namespace leadvar;

namespace {

GrangerGraph graph_from_edges(int K, const std::vector<std::pair<int, int>>& edges) {
  GrangerGraph g;
  g.adjacency.setConstant(K, K, false);
  for (const auto& [l, k] : edges) g.adjacency(l, k) = true;
  for (int i = 0; i < K; ++i) g.names.push_back("s" + std::to_string(i + 1));
  return g;
}

// bisect for the t threshold with P(T > t) = target
double critical_value(double df, double target) {
  double lo = 0.0, hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (student_t_sf(mid, df) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("forecast_one_step") {
  VarModel zero;
  zero.p = 1;
  zero.W = Eigen::MatrixXd::Zero(2, 2);
  CHECK(forecast_one_step(zero, Eigen::Vector2d(3, 4)).cwiseAbs().maxCoeff() == 0.0);

  VarModel scalar;
  scalar.p = 1;
  scalar.W = Eigen::MatrixXd::Constant(1, 1, 0.5);
  CHECK(forecast_one_step(scalar, Eigen::VectorXd::Constant(1, 2.0))(0) == doctest::Approx(1.0));

  // lag-1 copy: W puts weight 1 on each series' own lag-1 coefficient
  VarModel copy;
  copy.p = 2;
  copy.W = Eigen::MatrixXd::Zero(4, 2);
  copy.W(0, 0) = 1.0;
  copy.W(2, 1) = 1.0;
  Eigen::Vector4d x(7.0, 1.0, -2.0, 5.0);  // (lag1_a, lag2_a, lag1_b, lag2_b)
  const Eigen::VectorXd pred = forecast_one_step(copy, x);
  CHECK(pred(0) == doctest::Approx(7.0));
  CHECK(pred(1) == doctest::Approx(-2.0));

  CHECK_THROWS_AS(forecast_one_step(copy, Eigen::Vector2d(1, 2)), std::invalid_argument);
}

TEST_CASE("holdout_mse basics") {
  // perfect model on noiseless data
  VarModel copy;
  copy.p = 1;
  copy.W = Eigen::MatrixXd::Identity(1, 1);
  TimeSeriesPanel flat = make_panel(Eigen::MatrixXd::Constant(20, 1, 3.0));
  const LagDesign d = build_lag_design(flat, 1);
  CHECK(holdout_mse(copy, d).mse == doctest::Approx(0.0));

  // zero model on unit-variance noise: MSE near 1 per series
  VarModel zero;
  zero.p = 1;
  zero.W = Eigen::MatrixXd::Zero(2, 2);
  zero.names = {"a", "b"};
  SimulationConfig cfg;
  cfg.T = 20000;
  cfg.seed = 12;
  const TimeSeriesPanel noise = simulate_var(zero, cfg);
  const MseResult res = holdout_mse(zero, build_lag_design(noise, 1));
  CHECK(res.per_series(0) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(res.per_series(1) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(res.mse == doctest::Approx(res.per_series.mean()));
  CHECK(res.per_time.size() == noise.length() - 1);

  CHECK_THROWS_AS(holdout_mse(zero, LagDesign{}), std::invalid_argument);
}

TEST_CASE("true model achieves the noise floor on simulated data") {
  const Scenario s = make_scenario(scenario_spec('A', 8));
  SimulationConfig cfg;
  cfg.T = 20000;
  cfg.seed = 8;
  const TimeSeriesPanel panel = simulate_var(s.model, cfg);
  const MseResult res = holdout_mse(s.model, build_lag_design(panel, 3));
  CHECK(res.mse == doctest::Approx(1.0).epsilon(0.05));  // tr(I)/K = 1
}

TEST_CASE("relative_mse") {
  CHECK(relative_mse(2.0, 1.0) == doctest::Approx(2.0));
  CHECK(relative_mse(1.0, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(relative_mse(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("granger_accuracy enumeration example") {
  const GrangerGraph truth = graph_from_edges(3, {{0, 1}});
  const GrangerGraph pred = graph_from_edges(3, {{0, 1}, {0, 2}});
  CHECK(granger_accuracy(pred, truth) == doctest::Approx(5.0 / 6.0));

  CHECK(granger_accuracy(truth, truth) == doctest::Approx(1.0));

  // exact complement on off-diagonals
  GrangerGraph comp = truth;
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      if (l != k) comp.adjacency(l, k) = !truth.adjacency(l, k);
  CHECK(granger_accuracy(comp, truth) == doctest::Approx(0.0));

  CHECK_THROWS_AS(granger_accuracy(truth, graph_from_edges(2, {})), std::invalid_argument);
}

TEST_CASE("granger_accuracy is invariant to node relabeling") {
  const GrangerGraph truth = graph_from_edges(4, {{0, 1}, {2, 3}});
  const GrangerGraph pred = graph_from_edges(4, {{0, 1}, {3, 2}});
  const double base = granger_accuracy(pred, truth);

  const std::vector<int> perm = {2, 0, 3, 1};
  auto relabel = [&](const GrangerGraph& g) {
    GrangerGraph out = g;
    for (int l = 0; l < 4; ++l)
      for (int k = 0; k < 4; ++k) out.adjacency(perm[l], perm[k]) = g.adjacency(l, k);
    return out;
  };
  CHECK(granger_accuracy(relabel(pred), relabel(truth)) == doctest::Approx(base));
}

TEST_CASE("graph_stats") {
  const GrangerGraph empty = graph_from_edges(4, {});
  CHECK(graph_stats(empty).n_edges == 0);
  CHECK(graph_stats(empty).n_leading == 0);

  const GrangerGraph star = graph_from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const GraphStats s = graph_stats(star);
  CHECK(s.n_edges == 4);
  CHECK(s.n_leading == 1);
  CHECK(s.out_degree == std::vector<int>{4, 0, 0, 0, 0});

  const Scenario a = make_scenario(scenario_spec('A', 2));
  CHECK(graph_stats(a.truth).n_leading == 2);
}

TEST_CASE("edge threshold monotonicity") {
  const Scenario s = make_scenario(scenario_spec('A', 6));
  int prev = std::numeric_limits<int>::max();
  for (double thr : {1e-6, 1e-3, 1e-1, 1.0, 10.0}) {
    const int n = graph_stats(granger_graph_from_w(s.model, thr)).n_edges;
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("student_t_sf reproduces tabulated critical values") {
  // two-tailed 0.10 / one-tailed 0.05 critical values from standard t-tables
  CHECK(critical_value(2, 0.05) == doctest::Approx(2.920).epsilon(1e-3));
  CHECK(critical_value(10, 0.05) == doctest::Approx(1.812).epsilon(1e-3));
  CHECK(critical_value(100, 0.05) == doctest::Approx(1.660).epsilon(1e-3));
  // implied p at the tabulated thresholds
  CHECK(student_t_sf(2.920, 2) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(student_t_sf(1.812, 10) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(student_t_sf(1.660, 100) == doctest::Approx(0.05).epsilon(1e-3));
  // symmetry and limits
  CHECK(student_t_sf(0.0, 5) == doctest::Approx(0.5));
  CHECK(student_t_sf(-1.812, 10) == doctest::Approx(0.95).epsilon(1e-3));
}

TEST_CASE("paired_ttest_onesided") {
  Eigen::VectorXd a(3), b(3);
  a << 1, 2, 3;
  b << 1, 2, 3;
  CHECK(paired_ttest_onesided(a, b) == TestOutcome::Equal);

  // differences b - a = (1, 2, 3): t = 3.464, one-sided p ~ 0.037
  b << 2, 4, 6;
  CHECK(paired_ttest_onesided(a, b) == TestOutcome::Better);
  CHECK(paired_ttest_onesided(b, a) == TestOutcome::Worse);

  // zero-variance nonzero-mean differences decided by sign
  Eigen::VectorXd c = a.array() + 1.0;
  CHECK(paired_ttest_onesided(a, c) == TestOutcome::Better);
  CHECK(paired_ttest_onesided(c, a) == TestOutcome::Worse);

  CHECK_THROWS_AS(
      paired_ttest_onesided(Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 2.0)),
      std::invalid_argument);
}

TEST_CASE("adjusted_rand_index") {
  CHECK(adjusted_rand_index({1, 1, 2, 2}, {1, 1, 2, 2}) == doctest::Approx(1.0));
  CHECK(adjusted_rand_index({1, 1, 2, 2}, {2, 2, 1, 1}) == doctest::Approx(1.0));  // label-invariant
  CHECK(adjusted_rand_index({1, 2, 1, 2}, {1, 1, 2, 2}) < 0.5);
  CHECK_THROWS_AS(adjusted_rand_index({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("evaluate_model fills the report") {
  const Scenario s = make_scenario(scenario_spec('A', 4));
  SimulationConfig cfg;
  cfg.T = 300;
  cfg.seed = 4;
  const TimeSeriesPanel panel = simulate_var(s.model, cfg);
  const LagDesign d = build_lag_design(panel, 3);
  const double ref = holdout_mse(s.model, d).mse;
  const EvalReport report = evaluate_model(s.model, d, ref, &s.truth);
  CHECK(report.relative_mse == doctest::Approx(1.0));
  REQUIRE(report.granger_accuracy.has_value());
  CHECK(*report.granger_accuracy == doctest::Approx(1.0));
  CHECK(report.n_leading == 2);
  CHECK(report.n_edges <= 10 * 9);
}
