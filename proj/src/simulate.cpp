#include "leadvar/simulate.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace leadvar {

void ScenarioSpec::validate() const {
  if (K < 1 || p < 1) throw std::invalid_argument("scenario: K and p must be >= 1");
  std::set<int> seen;
  for (const auto& cluster : clusters) {
    if (cluster.empty()) throw std::invalid_argument("scenario: empty cluster");
    for (int m : cluster) {
      if (m < 0 || m >= K) throw std::invalid_argument("scenario: member out of range");
      if (!seen.insert(m).second) throw std::invalid_argument("scenario: overlapping clusters");
    }
  }
  if (static_cast<int>(seen.size()) != K)
    throw std::invalid_argument("scenario: clusters must partition the series");
  if (leaders.size() != clusters.size())
    throw std::invalid_argument("scenario: one leader set per cluster required");
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const std::set<int> members(clusters[c].begin(), clusters[c].end());
    for (int l : leaders[c])
      if (!members.count(l))
        throw std::invalid_argument("scenario: leader must belong to its cluster");
  }
  if (!(target_spectral_radius > 0.0 && target_spectral_radius < 1.0))
    throw std::invalid_argument("scenario: target spectral radius must be in (0,1)");
  if (!(coef_lo > 0.0 && coef_hi >= coef_lo))
    throw std::invalid_argument("scenario: bad coefficient range");
  if (!cluster_strength.empty() && cluster_strength.size() != clusters.size())
    throw std::invalid_argument("scenario: cluster_strength size mismatch");
}

ScenarioSpec scenario_spec(char id, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.id = id;
  spec.seed = seed;
  const auto range = [](int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
  };
  switch (id) {
    case 'A':
      spec.clusters = {range(0, 10)};
      spec.leaders = {{1, 4}};  // series 2 and 5
      break;
    case 'B':
      spec.clusters = {range(0, 5), range(5, 10)};
      spec.leaders = {{1, 3}, {6, 8}};
      break;
    case 'C':
      spec.clusters = {range(0, 10)};
      spec.leaders = {{}};
      break;
    case 'D':
      spec.clusters = {range(0, 10)};
      spec.leaders = {range(0, 10)};
      break;
    case 'E':
      spec.K = 30;
      spec.clusters = {range(0, 10), range(10, 20), range(20, 30)};
      spec.leaders = {{1}, {11}, {21}};
      spec.cluster_strength = {1.0, 1.0, 0.25};  // third cluster hard to discern
      break;
    default:
      throw std::invalid_argument(std::string("unknown scenario id: ") + id);
  }
  return spec;
}

Eigen::MatrixXd companion_matrix(const VarModel& model) {
  const Eigen::Index K = model.n_series();
  const int p = model.p;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(K * p, K * p);
  for (int j = 1; j <= p; ++j)
    for (Eigen::Index k = 0; k < K; ++k)
      for (Eigen::Index l = 0; l < K; ++l) C(k, (j - 1) * K + l) = model.W(l * p + j - 1, k);
  for (int j = 1; j < p; ++j)
    C.block(j * K, (j - 1) * K, K, K).setIdentity();
  return C;
}

double companion_spectral_radius(const VarModel& model) {
  const Eigen::MatrixXd C = companion_matrix(model);
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Scenario make_scenario(const ScenarioSpec& spec) {
  spec.validate();
  const int K = spec.K, p = spec.p;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto draw_block = [&](Eigen::Index l, Eigen::Index k, double strength,
                              Eigen::MatrixXd& W) {
    for (int j = 0; j < p; ++j) {
      const double mag = spec.coef_lo + unit(rng) * (spec.coef_hi - spec.coef_lo) * strength;
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      W(l * p + j, k) = sign * mag;
    }
  };

  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(K * p, K);
  GrangerGraph truth;
  truth.adjacency.setConstant(K, K, false);
  std::vector<int> labels(K, 0);

  for (Eigen::Index k = 0; k < K; ++k) draw_block(k, k, 1.0, W);
  for (std::size_t c = 0; c < spec.clusters.size(); ++c) {
    const double strength = spec.cluster_strength.empty() ? 1.0 : spec.cluster_strength[c];
    for (int member : spec.clusters[c]) labels[member] = static_cast<int>(c) + 1;
    for (int leader : spec.leaders[c]) {
      for (int member : spec.clusters[c]) {
        if (member == leader) continue;
        draw_block(leader, member, strength, W);
        truth.adjacency(leader, member) = true;
      }
    }
  }

  VarModel model;
  model.p = p;
  model.W = W;
  for (int k = 0; k < K; ++k) model.names.push_back("s" + std::to_string(k + 1));
  truth.names = model.names;

  // Rescale so the companion spectral radius hits the target; the radius is
  // monotone in the overall coefficient scale, so bisect on it.
  const auto radius_at = [&](double scale) {
    VarModel scaled = model;
    scaled.W *= scale;
    return companion_spectral_radius(scaled);
  };
  double hi = 1.0;
  while (radius_at(hi) < spec.target_spectral_radius) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (radius_at(mid) < spec.target_spectral_radius ? lo : hi) = mid;
  }
  model.W *= 0.5 * (lo + hi);

  Scenario out;
  out.model = std::move(model);
  out.truth = std::move(truth);
  out.cluster_labels = std::move(labels);
  return out;
}

TimeSeriesPanel simulate_var(const VarModel& model, const SimulationConfig& cfg) {
  const Eigen::Index K = model.n_series();
  const int p = model.p;
  if (cfg.T < 1) throw std::invalid_argument("simulate_var: T must be >= 1");
  if (cfg.burn_in < 100) throw std::invalid_argument("simulate_var: burn_in must be >= 100");
  if (companion_spectral_radius(model) >= 1.0)
    throw std::invalid_argument("simulate_var: non-stationary model rejected");

  Eigen::MatrixXd noise_cov = cfg.noise_cov;
  if (noise_cov.size() == 0) noise_cov = Eigen::MatrixXd::Identity(K, K);
  if (noise_cov.rows() != K || noise_cov.cols() != K)
    throw std::invalid_argument("simulate_var: noise covariance size mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(noise_cov);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("simulate_var: noise covariance must be positive definite");
  const Eigen::MatrixXd L = llt.matrixL();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXd out(cfg.T, K);
  Eigen::MatrixXd history = Eigen::MatrixXd::Zero(p, K);  // row 0 = most recent
  Eigen::VectorXd lag_row(K * p), z(K);
  for (int t = 0; t < cfg.burn_in + cfg.T; ++t) {
    for (Eigen::Index b = 0; b < K; ++b)
      for (int j = 0; j < p; ++j) lag_row[b * p + j] = history(j, b);
    for (Eigen::Index k = 0; k < K; ++k) z[k] = gauss(rng);
    const Eigen::VectorXd y = model.W.transpose() * lag_row + L * z;
    for (int j = p - 1; j > 0; --j) history.row(j) = history.row(j - 1);
    history.row(0) = y.transpose();
    if (t >= cfg.burn_in) out.row(t - cfg.burn_in) = y.transpose();
  }
  return make_panel(std::move(out), model.names);
}

}  // namespace leadvar
