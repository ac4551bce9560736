#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "leadvar/panel.hpp"

namespace leadvar {

/// Directed Granger-causality graph over the series; entry (l, k) means
/// "series l G-causes series k".  The diagonal is excluded from edge counts
/// and accuracy (own-history dependence is always present by construction).
struct GrangerGraph {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adjacency;
  std::vector<std::string> names;

  Eigen::Index n_nodes() const { return adjacency.rows(); }
};

struct GraphStats {
  int n_edges = 0;
  int n_leading = 0;  // nodes with off-diagonal out-degree >= 1
  std::vector<int> out_degree;
};

/// Edge l->k iff the L2 norm of block (l, k) of W exceeds
/// threshold * (1 + ||W||_F) / K.
GrangerGraph granger_graph_from_w(const VarModel& model, double threshold = 1e-6);

/// Fraction of correctly classified off-diagonal ordered pairs.
double granger_accuracy(const GrangerGraph& predicted, const GrangerGraph& truth);

GraphStats graph_stats(const GrangerGraph& g);

std::string graph_to_dot(const GrangerGraph& g);

}  // namespace leadvar
