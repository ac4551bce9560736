#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "leadvar/scvar.hpp"
#include "leadvar/granger.hpp"
#include "leadvar/simulate.hpp"

using namespace leadvar;

namespace {

LagDesign random_design(int T, int K, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd values(T, K);
  for (Eigen::Index t = 0; t < T; ++t)
    for (Eigen::Index k = 0; k < K; ++k) values(t, k) = gauss(rng);
  return build_lag_design(make_panel(values), p);
}

}  // namespace

TEST_CASE("gamma_from_alpha") {
  Eigen::VectorXd alpha(2);
  alpha << 0.3, 0.7;
  const Eigen::MatrixXd Gamma = gamma_from_alpha(alpha, 1.0);
  CHECK(Gamma(0, 0) == 1.0);
  CHECK(Gamma(1, 1) == 1.0);
  CHECK(Gamma(0, 1) == 0.3);
  CHECK(Gamma(1, 0) == 0.7);

  CHECK(gamma_from_alpha(Eigen::VectorXd::Zero(3), 1.0).isIdentity(0.0));

  Eigen::VectorXd spike = Eigen::VectorXd::Zero(3);
  spike[0] = 2.5;
  const Eigen::MatrixXd G3 = gamma_from_alpha(spike, 1.0);
  CHECK(G3(0, 1) == 2.5);
  CHECK(G3(0, 2) == 2.5);
  CHECK(G3(1, 0) == 0.0);
  CHECK(G3(2, 1) == 0.0);
}

TEST_CASE("assemble_w scales blocks by gamma") {
  const int K = 2, p = 3;
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(K * p, K);
  V.block(0, 1, p, 1) << 1, -1, 0;  // block (b=0, k=1)
  Eigen::MatrixXd Gamma = Eigen::MatrixXd::Identity(K, K);
  Gamma(0, 1) = 2.0;
  const VarModel model = assemble_w(Gamma, V, p);
  CHECK(model.W(0, 1) == 2.0);
  CHECK(model.W(1, 1) == -2.0);
  CHECK(model.W(2, 1) == 0.0);
}

TEST_CASE("assemble_w with identity gamma zeroes off-diagonal blocks") {
  const int K = 3, p = 2;
  Eigen::MatrixXd V = Eigen::MatrixXd::Random(K * p, K);
  const VarModel model = assemble_w(Eigen::MatrixXd::Identity(K, K), V, p);
  for (Eigen::Index b = 0; b < K; ++b)
    for (Eigen::Index k = 0; k < K; ++k)
      if (b != k) CHECK(model.W.block(b * p, k, p, 1).norm() == 0.0);
}

TEST_CASE("adaptive ridge identity ||v||^2 = ||w||^2 / gamma^2") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss;
  const int K = 3, p = 2;
  Eigen::MatrixXd V(K * p, K), Gamma(K, K);
  for (Eigen::Index i = 0; i < V.size(); ++i) V(i) = gauss(rng);
  for (Eigen::Index i = 0; i < Gamma.size(); ++i) Gamma(i) = 0.1 + std::abs(gauss(rng));
  const VarModel model = assemble_w(Gamma, V, p);
  for (Eigen::Index b = 0; b < K; ++b)
    for (Eigen::Index k = 0; k < K; ++k) {
      const double v2 = V.block(b * p, k, p, 1).squaredNorm();
      const double w2 = model.W.block(b * p, k, p, 1).squaredNorm();
      CHECK(v2 == doctest::Approx(w2 / (Gamma(b, k) * Gamma(b, k))).epsilon(1e-10));
    }
}

TEST_CASE("fit_scvar on zero targets gives zero V and untouched alpha") {
  LagDesign design = random_design(50, 3, 2, 1);
  design.Y.setZero();
  const ScvarFit fit = fit_scvar(design, 0.5, 1.0);
  CHECK(fit.state.V.cwiseAbs().maxCoeff() == 0.0);
  CHECK((fit.state.alpha_bar.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
  CHECK(fit.state.objective_trace.back() == doctest::Approx(0.0));
}

TEST_CASE("fit_scvar concentrates alpha on the only cross-predictor") {
  // series 2 driven by lag-1 of series 1 with coefficient 0.8
  VarModel truth;
  truth.p = 1;
  truth.W = Eigen::MatrixXd::Zero(2, 2);
  truth.W(0, 1) = 0.8;
  truth.names = {"s1", "s2"};
  SimulationConfig cfg;
  cfg.T = 2000;
  cfg.seed = 77;
  const TimeSeriesPanel panel = simulate_var(truth, cfg);

  // With weak lambda the alternating scheme stalls near the uniform alpha
  // (v rescales to compensate any alpha); strong lambda breaks that valley.
  const ScvarFit fit = fit_scvar(build_lag_design(panel, 1), 10.0, 1.0);
  CHECK(fit.state.alpha_bar[0] > 0.9);
  CHECK(fit.state.alpha_bar[1] < 0.1);
}

TEST_CASE("fit_scvar recovers the scenario-A graph at T=500") {
  const Scenario scenario = make_scenario(scenario_spec('A', 3));
  SimulationConfig cfg;
  cfg.T = 500;
  cfg.seed = 3;
  const TimeSeriesPanel panel = simulate_var(scenario.model, cfg);
  const ScvarFit fit = fit_scvar(build_lag_design(panel, 3), 10.0, 1.0);
  const GrangerGraph g = granger_graph_from_w(fit.model);
  CHECK(granger_accuracy(g, scenario.truth) >= 0.95);
}

TEST_CASE("fit_scvar invariants: monotone trace, feasibility, loss reconstruction") {
  const Scenario scenario = make_scenario(scenario_spec('B', 5));
  SimulationConfig cfg;
  cfg.T = 200;
  cfg.seed = 5;
  const TimeSeriesPanel panel = simulate_var(scenario.model, cfg);
  const LagDesign design = build_lag_design(panel, 3);
  const double kappa = 2.0, lambda = 0.3;
  const ScvarFit fit = fit_scvar(design, lambda, kappa);

  const auto& trace = fit.state.objective_trace;
  REQUIRE(trace.size() >= 2);
  for (std::size_t i = 0; i + 1 < trace.size(); ++i)
    CHECK(trace[i + 1] <= trace[i] + 1e-8 * (1.0 + std::abs(trace[i])));

  CHECK(fit.state.alpha_bar.minCoeff() >= 0.0);
  CHECK(std::abs(fit.state.alpha_bar.sum() - kappa) < 1e-8);
  CHECK((fit.state.Gamma.diagonal().array() == 1.0).all());
  for (Eigen::Index k = 0; k < design.n_series(); ++k)
    for (Eigen::Index b = 0; b < design.n_series(); ++b)
      if (b != k) CHECK(fit.state.Gamma(b, k) == fit.state.alpha_bar[b]);

  // loss through (Gamma, V) equals loss through the assembled W
  const double loss_gv = structured_loss(design, fit.state.Gamma, fit.state.V);
  const double loss_w = (design.Y - design.X * fit.model.W).squaredNorm();
  CHECK(loss_gv == doctest::Approx(loss_w).epsilon(1e-10));
}

TEST_CASE("frozen identity gamma reduces to independent ridge autoregressions") {
  const LagDesign design = random_design(80, 3, 2, 9);
  const double lambda = 0.4;
  const Eigen::MatrixXd Gamma = gamma_from_alpha(Eigen::VectorXd::Zero(3), 1.0);
  const Eigen::MatrixXd V = solve_v_given_gamma(design, Gamma, lambda);
  const VarModel model = assemble_w(Gamma, V, design.p);
  for (Eigen::Index b = 0; b < 3; ++b)
    for (Eigen::Index k = 0; k < 3; ++k)
      if (b != k) CHECK(model.W.block(b * design.p, k, design.p, 1).norm() == 0.0);
  // diagonal blocks match a per-series ridge on own lags
  for (Eigen::Index k = 0; k < 3; ++k) {
    const Eigen::VectorXd own =
        ridge_solve(design.X.middleCols(k * design.p, design.p), design.Y.col(k), lambda);
    CHECK((model.W.block(k * design.p, k, design.p, 1) - own).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("fit_scvar rejects bad hyperparameters") {
  const LagDesign design = random_design(30, 2, 1, 4);
  CHECK_THROWS_AS(fit_scvar(design, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_scvar(design, 0.1, 0.0), std::invalid_argument);  // kappa=0 degenerate
}
