#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "leadvar/evaluate.hpp"
#include "leadvar/mcvar.hpp"
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

TEST_CASE("fit_mcvar on zero targets keeps the initialization") {
  LagDesign design = random_design(40, 3, 2, 1);
  design.Y.setZero();
  const McvarFit fit = fit_mcvar(design, 0.5, 1.2, 2);
  CHECK(fit.state.V.cwiseAbs().maxCoeff() == 0.0);
  // with zero targets every residual is zero, so D and G stay at the
  // (deterministically tilted) initialization and remain feasible
  CHECK((fit.state.D.array() - 1.2 / 3.0).abs().maxCoeff() < 1e-12);
  CHECK(fit.state.G.minCoeff() >= 0.0);
  for (Eigen::Index k = 0; k < fit.state.G.cols(); ++k)
    CHECK(std::abs(fit.state.G.col(k).sum() - 1.0) < 1e-12);
}

TEST_CASE("r=1 MCVAR matches SCVAR per outer iteration") {
  std::mt19937_64 seed_rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const int K = 2 + static_cast<int>(seed_rng() % 4);  // K in [2,5]
    const int T = 40 + static_cast<int>(seed_rng() % 61);
    const int p = 1 + static_cast<int>(seed_rng() % 3);
    const LagDesign design = random_design(T, K, p, seed_rng());
    const double lambda = 0.2, kappa = 1.5;
    for (int outer = 1; outer <= 4; ++outer) {
      AlternatingOptions opts;
      opts.max_outer_iter = outer;
      opts.tol = 1e-15;
      const ScvarFit sfit = fit_scvar(design, lambda, kappa, opts);
      const McvarFit mfit = fit_mcvar(design, lambda, kappa, 1, opts);
      CHECK((sfit.model.W - mfit.model.W).cwiseAbs().maxCoeff() <= 1e-6);
      // unit simplex in 1-d is the single point 1
      CHECK((mfit.state.G.array() == 1.0).all());
    }
  }
}

TEST_CASE("Hadamard-Kronecker step-2b system equals the per-task loop sum") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 40; ++trial) {
    const int K = 2 + static_cast<int>(rng() % 3);  // K in [2,4]
    const int r = 1 + static_cast<int>(rng() % 3);  // r in [1,3]
    const int T = 2 + static_cast<int>(rng() % 4);  // T' in [2,5]

    std::vector<Eigen::MatrixXd> H(K);
    Eigen::MatrixXd R(T, K), D(K, r), G(r, K);
    for (auto& Hk : H) {
      Hk.resize(T, K);
      for (Eigen::Index i = 0; i < Hk.size(); ++i) Hk(i) = gauss(rng);
    }
    for (Eigen::Index i = 0; i < R.size(); ++i) R(i) = gauss(rng);
    for (Eigen::Index i = 0; i < D.size(); ++i) D(i) = gauss(rng);
    for (Eigen::Index i = 0; i < G.size(); ++i) G(i) = gauss(rng);

    // vectorized construction: G_hat = G' kron (1_T 1'_K), H_hat = 1'_r kron H
    Eigen::MatrixXd Hstack(K * T, K);
    Eigen::VectorXd vecR(K * T);
    for (int k = 0; k < K; ++k) {
      Hstack.middleRows(k * T, T) = H[k];
      vecR.segment(k * T, T) = R.col(k);
    }
    Eigen::MatrixXd Ghat(K * T, K * r), Hhat(K * T, K * r);
    for (int j = 0; j < r; ++j) {
      Hhat.middleCols(j * K, K) = Hstack;
      for (int k = 0; k < K; ++k)
        Ghat.block(k * T, j * K, T, K).setConstant(G(j, k));
    }
    const Eigen::MatrixXd M = Ghat.cwiseProduct(Hhat);
    const Eigen::VectorXd vecD = Eigen::Map<const Eigen::VectorXd>(D.data(), K * r);
    const double vec_obj = (vecR - M * vecD).squaredNorm();

    double loop_obj = 0.0;
    for (int k = 0; k < K; ++k) loop_obj += (R.col(k) - H[k] * (D * G.col(k))).squaredNorm();

    CHECK(vec_obj == doctest::Approx(loop_obj).epsilon(1e-10));
  }
}

TEST_CASE("fit_mcvar recovers the planted two-cluster structure") {
  const Scenario scenario = make_scenario(scenario_spec('B', 11));
  SimulationConfig cfg;
  cfg.T = 500;
  cfg.seed = 11;
  const TimeSeriesPanel panel = simulate_var(scenario.model, cfg);
  const McvarFit fit = fit_mcvar(build_lag_design(panel, 3), 0.1, 1.0, 2);
  const double ari = adjusted_rand_index(cluster_assignments(fit.state.G),
                                         scenario.cluster_labels);
  CHECK(ari >= 0.9);
}

TEST_CASE("fit_mcvar invariants: monotone trace and simplex feasibility") {
  const Scenario scenario = make_scenario(scenario_spec('B', 21));
  SimulationConfig cfg;
  cfg.T = 150;
  cfg.seed = 21;
  const TimeSeriesPanel panel = simulate_var(scenario.model, cfg);
  const double kappa = 0.5;
  const McvarFit fit = fit_mcvar(build_lag_design(panel, 3), 0.2, kappa, 3);

  const auto& trace = fit.state.objective_trace;
  REQUIRE(trace.size() >= 2);
  for (std::size_t i = 0; i + 1 < trace.size(); ++i)
    CHECK(trace[i + 1] <= trace[i] + 1e-8 * (1.0 + std::abs(trace[i])));

  CHECK(fit.state.D.minCoeff() >= 0.0);
  CHECK(fit.state.G.minCoeff() >= 0.0);
  for (Eigen::Index j = 0; j < fit.state.D.cols(); ++j)
    CHECK(std::abs(fit.state.D.col(j).sum() - kappa) < 1e-8);
  for (Eigen::Index k = 0; k < fit.state.G.cols(); ++k)
    CHECK(std::abs(fit.state.G.col(k).sum() - 1.0) < 1e-8);

  const Eigen::MatrixXd A = fit.state.D * fit.state.G;
  CHECK(A.minCoeff() >= -1e-12);
  for (Eigen::Index k = 0; k < A.cols(); ++k)
    CHECK(std::abs(A.col(k).sum() - kappa) < 1e-8);
  CHECK((fit.state.Gamma.diagonal().array() == 1.0).all());
}

TEST_CASE("r=2 from a warm r=1 start does not end above the r=1 objective") {
  const Scenario scenario = make_scenario(scenario_spec('B', 31));
  SimulationConfig cfg;
  cfg.T = 200;
  cfg.seed = 31;
  const TimeSeriesPanel panel = simulate_var(scenario.model, cfg);
  const LagDesign design = build_lag_design(panel, 3);
  const double lambda = 0.2, kappa = 1.0;

  const McvarFit r1 = fit_mcvar(design, lambda, kappa, 1);
  // duplicate the converged prototype into both columns, split the weights
  Eigen::MatrixXd D0(design.n_series(), 2);
  D0.col(0) = r1.state.D.col(0);
  D0.col(1) = r1.state.D.col(0);
  Eigen::MatrixXd G0 = Eigen::MatrixXd::Constant(2, design.n_series(), 0.5);
  const McvarFit r2 = fit_mcvar(design, lambda, kappa, 2, {}, &D0, &G0);

  CHECK(r2.state.objective_trace.back() <=
        r1.state.objective_trace.back() + 1e-6 * (1.0 + r1.state.objective_trace.back()));
}

TEST_CASE("cluster_assignments") {
  Eigen::MatrixXd G(2, 2);
  G << 0.9, 0.1, 0.1, 0.9;
  CHECK(cluster_assignments(G) == std::vector<int>{1, 2});

  Eigen::MatrixXd tie(2, 1);
  tie << 0.5, 0.5;
  CHECK(cluster_assignments(tie) == std::vector<int>{1});

  Eigen::MatrixXd single(1, 3);
  single << 1, 1, 1;
  CHECK(cluster_assignments(single) == std::vector<int>{1, 1, 1});
}

TEST_CASE("fit_mcvar rejects out-of-range rank") {
  const LagDesign design = random_design(30, 3, 1, 2);
  CHECK_THROWS_AS(fit_mcvar(design, 0.1, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(fit_mcvar(design, 0.1, 1.0, 4), std::invalid_argument);
}
