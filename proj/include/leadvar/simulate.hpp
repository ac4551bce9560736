#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "leadvar/granger.hpp"
#include "leadvar/panel.hpp"

namespace leadvar {

/// Synthetic scenario: clusters partition the series, each cluster has a set
/// of leading indicators whose lag blocks drive every member of the cluster.
struct ScenarioSpec {
  char id = 'A';
  int K = 10;
  int p = 3;
  std::vector<std::vector<int>> clusters;  // 0-based member indices
  std::vector<std::vector<int>> leaders;   // per cluster, 0-based
  double target_spectral_radius = 0.9;
  std::uint64_t seed = 0;
  // Coefficient magnitudes before stationarity rescaling; scenario E's third
  // cluster deliberately sits at the low end.
  double coef_lo = 0.2;
  double coef_hi = 0.6;
  std::vector<double> cluster_strength;  // per-cluster multiplier, default 1

  void validate() const;
};

/// Canonical specs matching the experimental scenarios:
///   A: K=10 single cluster, 2 leading indicators
///   B: K=10, 2 clusters, 1 leading indicator each
///   C: K=10, diagonal only (no cross-dependencies)
///   D: K=10, fully connected
///   E: K=30, 3 clusters, one deliberately weak
ScenarioSpec scenario_spec(char id, std::uint64_t seed);

struct Scenario {
  VarModel model;      // ground-truth W
  GrangerGraph truth;  // ground-truth graph
  std::vector<int> cluster_labels;  // 1-based, per series
};

Scenario make_scenario(const ScenarioSpec& spec);

struct SimulationConfig {
  int T = 1000;
  int burn_in = 500;
  Eigen::MatrixXd noise_cov;  // default identity
  std::uint64_t seed = 0;
};

Eigen::MatrixXd companion_matrix(const VarModel& model);
double companion_spectral_radius(const VarModel& model);

/// Iterates y_t = W' x_t + e_t with seeded Gaussian noise; the first burn_in
/// samples are discarded.  Identical seed gives bit-identical output.
TimeSeriesPanel simulate_var(const VarModel& model, const SimulationConfig& cfg);

}  // namespace leadvar
