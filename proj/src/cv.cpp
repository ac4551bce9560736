#include "leadvar/cv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leadvar {

void Grid::validate() const {
  if (lambda_values.empty()) throw std::invalid_argument("grid: empty lambda axis");
  const auto check_axis = [](const std::vector<double>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0)) throw std::invalid_argument(std::string("grid: non-positive ") + name);
      if (i > 0 && v[i] <= v[i - 1])
        throw std::invalid_argument(std::string("grid: ") + name + " must be strictly ascending");
    }
  };
  check_axis(lambda_values, "lambda");
  check_axis(kappa_values, "kappa");
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo && n >= 2)) throw std::invalid_argument("log_grid: bad range");
  std::vector<double> v(n);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < n; ++i) v[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
  return v;
}

Grid default_grid() {
  Grid grid;
  grid.lambda_values = log_grid(1e-4, 1.0, 10);
  grid.kappa_values = log_grid(1e-2, 10.0, 4);
  return grid;
}

std::vector<int> default_r_values(int K) {
  std::vector<int> r = {1, 2, 3, (K + 3) / 4, K};
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  r.erase(std::remove_if(r.begin(), r.end(), [K](int v) { return v < 1 || v > K; }), r.end());
  return r;
}

LagDesign design_rows(const LagDesign& design, Eigen::Index start, Eigen::Index count) {
  LagDesign out;
  out.p = design.p;
  out.Y = design.Y.middleRows(start, count);
  out.X = design.X.middleRows(start, count);
  return out;
}

namespace {

LagDesign drop_rows(const LagDesign& design, Eigen::Index start, Eigen::Index count) {
  const Eigen::Index n = design.n_rows();
  LagDesign out;
  out.p = design.p;
  out.Y.resize(n - count, design.Y.cols());
  out.X.resize(n - count, design.X.cols());
  out.Y << design.Y.topRows(start), design.Y.bottomRows(n - start - count);
  out.X << design.X.topRows(start), design.X.bottomRows(n - start - count);
  return out;
}

}  // namespace

CvResult grid_search_cv(const LagDesign& design, const CvFitter& fitter, const Grid& grid,
                        int folds) {
  grid.validate();
  if (folds < 2) throw std::invalid_argument("grid_search_cv: folds must be >= 2");
  const Eigen::Index n = design.n_rows();
  if (n < folds) throw std::invalid_argument("grid_search_cv: too few rows for the fold count");

  std::vector<HyperParams> points;
  const std::vector<double> kappas =
      grid.kappa_values.empty() ? std::vector<double>{1.0} : grid.kappa_values;
  for (double lambda : grid.lambda_values) {
    for (double kappa : kappas) {
      if (grid.r_values.empty()) {
        points.push_back({lambda, kappa, std::nullopt});
      } else {
        for (int r : grid.r_values) points.push_back({lambda, kappa, r});
      }
    }
  }

  CvResult result;
  bool have_best = false;
  for (const auto& params : points) {
    double total = 0.0;
    for (int f = 0; f < folds; ++f) {
      const Eigen::Index start = f * n / folds;
      const Eigen::Index stop = (f + 1) * n / folds;
      const LagDesign val = design_rows(design, start, stop - start);
      const LagDesign train = drop_rows(design, start, stop - start);
      const Eigen::MatrixXd W = fitter(train, params);
      total += (val.Y - val.X * W).array().square().mean();
    }
    const double cv_mse = total / folds;
    result.table.push_back({params, cv_mse});

    bool take = false;
    if (!have_best || cv_mse < result.best_cv_mse - 1e-12) {
      take = true;
    } else if (cv_mse <= result.best_cv_mse + 1e-12) {
      // tie: prefer stronger regularization (larger lambda, smaller kappa),
      // then smaller rank
      const auto& b = result.best;
      if (params.lambda > b.lambda) {
        take = true;
      } else if (params.lambda == b.lambda) {
        if (params.kappa < b.kappa) {
          take = true;
        } else if (params.kappa == b.kappa && params.r && b.r && *params.r < *b.r) {
          take = true;
        }
      }
    }
    if (take) {
      result.best = params;
      result.best_cv_mse = cv_mse;
      have_best = true;
    }
  }
  return result;
}

}  // namespace leadvar
