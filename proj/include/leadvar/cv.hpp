#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "leadvar/panel.hpp"

namespace leadvar {

struct HyperParams {
  double lambda = 0.1;
  double kappa = 1.0;
  std::optional<int> r;  // MCVAR rank axis
};

struct Grid {
  std::vector<double> lambda_values;
  std::vector<double> kappa_values;
  std::vector<int> r_values;  // empty unless the method takes a rank

  void validate() const;
};

/// 10-point log grid on [1e-4, 1] for lambda, 4-point log grid on [1e-2, 10]
/// for kappa.
Grid default_grid();
/// Default rank axis {1, 2, 3, ceil(K/4), K}, deduplicated.
std::vector<int> default_r_values(int K);
std::vector<double> log_grid(double lo, double hi, int n);

struct CvCell {
  HyperParams params;
  double cv_mse = 0.0;
};

struct CvResult {
  HyperParams best;
  double best_cv_mse = 0.0;
  std::vector<CvCell> table;
};

/// Fits on a row subset of the design and returns the Kp x K weight matrix.
using CvFitter = std::function<Eigen::MatrixXd(const LagDesign&, const HyperParams&)>;

/// 5-fold-style inner CV with contiguous chronological validation blocks;
/// argmin of fold-averaged validation MSE, ties broken toward larger lambda,
/// then smaller kappa, then smaller r.
CvResult grid_search_cv(const LagDesign& design, const CvFitter& fitter, const Grid& grid,
                        int folds = 5);

/// Row subset of a design (used for CV folds).
LagDesign design_rows(const LagDesign& design, Eigen::Index start, Eigen::Index count);

}  // namespace leadvar
