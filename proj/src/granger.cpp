#include "leadvar/granger.hpp"

#include <sstream>
#include <stdexcept>

namespace leadvar {

GrangerGraph granger_graph_from_w(const VarModel& model, double threshold) {
  const Eigen::Index K = model.n_series();
  const int p = model.p;
  if (threshold < 0.0) throw std::invalid_argument("granger_graph_from_w: negative threshold");

  const double cutoff = threshold * (1.0 + model.W.norm()) / static_cast<double>(K);
  GrangerGraph g;
  g.names = model.names;
  g.adjacency.setConstant(K, K, false);
  for (Eigen::Index l = 0; l < K; ++l)
    for (Eigen::Index k = 0; k < K; ++k)
      if (l != k) g.adjacency(l, k) = model.W.block(l * p, k, p, 1).norm() > cutoff;
  return g;
}

double granger_accuracy(const GrangerGraph& predicted, const GrangerGraph& truth) {
  const Eigen::Index K = truth.n_nodes();
  if (predicted.n_nodes() != K) throw std::invalid_argument("granger_accuracy: size mismatch");
  if (K < 2) throw std::invalid_argument("granger_accuracy: need at least 2 nodes");

  int correct = 0;
  for (Eigen::Index l = 0; l < K; ++l)
    for (Eigen::Index k = 0; k < K; ++k)
      if (l != k && predicted.adjacency(l, k) == truth.adjacency(l, k)) ++correct;
  return static_cast<double>(correct) / static_cast<double>(K * (K - 1));
}

GraphStats graph_stats(const GrangerGraph& g) {
  const Eigen::Index K = g.n_nodes();
  GraphStats stats;
  stats.out_degree.assign(K, 0);
  for (Eigen::Index l = 0; l < K; ++l) {
    for (Eigen::Index k = 0; k < K; ++k)
      if (l != k && g.adjacency(l, k)) ++stats.out_degree[l];
    stats.n_edges += stats.out_degree[l];
    if (stats.out_degree[l] >= 1) ++stats.n_leading;
  }
  return stats;
}

std::string graph_to_dot(const GrangerGraph& g) {
  std::ostringstream out;
  out << "digraph granger {\n";
  const Eigen::Index K = g.n_nodes();
  for (Eigen::Index k = 0; k < K; ++k) {
    const std::string name =
        k < static_cast<Eigen::Index>(g.names.size()) ? g.names[k] : "s" + std::to_string(k + 1);
    out << "  n" << k << " [label=\"" << name << "\"];\n";
  }
  for (Eigen::Index l = 0; l < K; ++l)
    for (Eigen::Index k = 0; k < K; ++k)
      if (l != k && g.adjacency(l, k)) out << "  n" << l << " -> n" << k << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace leadvar
