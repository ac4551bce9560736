#include "leadvar/experiment.hpp"

#include <atomic>
#include <future>
#include <map>
#include <stdexcept>
#include <thread>

namespace leadvar {

std::string to_string(Method m) {
  switch (m) {
    case Method::Mean: return "mean";
    case Method::RandomWalk: return "rw";
    case Method::Ar: return "ar";
    case Method::Lg: return "lg";
    case Method::Glg: return "glg";
    case Method::Scvar: return "scvar";
    case Method::Mcvar: return "mcvar";
  }
  throw std::logic_error("unknown Method");
}

Method method_from_string(const std::string& s) {
  if (s == "mean") return Method::Mean;
  if (s == "rw") return Method::RandomWalk;
  if (s == "ar") return Method::Ar;
  if (s == "lg") return Method::Lg;
  if (s == "glg") return Method::Glg;
  if (s == "scvar") return Method::Scvar;
  if (s == "mcvar") return Method::Mcvar;
  throw std::invalid_argument("unknown method: " + s);
}

FittedMethod fit_method(const TimeSeriesPanel& train, Method method, int p,
                        const HyperParams& params, const AlternatingOptions& opts) {
  FittedMethod fitted;
  fitted.method = method;
  fitted.params = params;

  if (method == Method::Mean) {
    fitted.baseline = fit_mean(train);
    return fitted;
  }
  if (method == Method::RandomWalk) {
    fitted.baseline = fit_random_walk(p);
    return fitted;
  }

  const LagDesign design = build_lag_design(train, p);
  switch (method) {
    case Method::Ar:
      fitted.model = {fit_ar(design, params.lambda).W, p, train.names};
      break;
    case Method::Lg:
      fitted.model = {fit_lg(design, params.lambda).W, p, train.names};
      break;
    case Method::Glg:
      fitted.model = {fit_glg(design, params.lambda).W, p, train.names};
      break;
    case Method::Scvar: {
      ScvarFit fit = fit_scvar(design, params.lambda, params.kappa, opts);
      fitted.objective_trace = fit.state.objective_trace;
      fitted.model = std::move(fit.model);
      fitted.model.names = train.names;
      fitted.scvar_state = std::move(fit.state);
      break;
    }
    case Method::Mcvar: {
      McvarFit fit = fit_mcvar(design, params.lambda, params.kappa, params.r.value_or(1), opts);
      fitted.objective_trace = fit.state.objective_trace;
      fitted.model = std::move(fit.model);
      fitted.model.names = train.names;
      fitted.mcvar_state = std::move(fit.state);
      break;
    }
    default:
      throw std::logic_error("unreachable");
  }
  return fitted;
}

FittedMethod fit_method_cv(const TimeSeriesPanel& train, Method method, int p, const Grid& grid,
                           int folds, CvResult* cv_out) {
  if (method == Method::Mean || method == Method::RandomWalk)
    return fit_method(train, method, p, {});

  Grid method_grid = grid;
  switch (method) {
    case Method::Ar:
    case Method::Lg:
    case Method::Glg:
      method_grid.kappa_values.clear();
      method_grid.r_values.clear();
      break;
    case Method::Scvar:
      method_grid.r_values.clear();
      break;
    case Method::Mcvar:
      if (method_grid.r_values.empty())
        method_grid.r_values = default_r_values(static_cast<int>(train.n_series()));
      break;
    default:
      break;
  }

  const CvFitter fitter = [&](const LagDesign& sub, const HyperParams& params) {
    switch (method) {
      case Method::Ar: return Eigen::MatrixXd(fit_ar(sub, params.lambda).W);
      case Method::Lg: return Eigen::MatrixXd(fit_lg(sub, params.lambda).W);
      case Method::Glg: return Eigen::MatrixXd(fit_glg(sub, params.lambda).W);
      case Method::Scvar: return Eigen::MatrixXd(fit_scvar(sub, params.lambda, params.kappa).model.W);
      case Method::Mcvar:
        return Eigen::MatrixXd(
            fit_mcvar(sub, params.lambda, params.kappa, params.r.value_or(1)).model.W);
      default:
        throw std::logic_error("unreachable");
    }
  };

  const LagDesign design = build_lag_design(train, p);
  const CvResult cv = grid_search_cv(design, fitter, method_grid, folds);
  if (cv_out) *cv_out = cv;
  return fit_method(train, method, p, cv.best);
}

Eigen::MatrixXd predict_holdout(const FittedMethod& fitted, const LagDesign& holdout_design) {
  if (fitted.has_w()) return holdout_design.X * fitted.model.W;
  return fitted.baseline.predict(holdout_design);
}

std::vector<SweepCellResult> run_sweep(const TimeSeriesPanel& full_train,
                                       const TimeSeriesPanel& holdout, double reference_mse,
                                       const SweepConfig& cfg, const GrangerGraph* truth) {
  if (cfg.train_sizes.empty()) throw std::invalid_argument("run_sweep: no training sizes");

  struct Cell {
    int size;
    Method method;
  };
  std::vector<Cell> cells;
  for (int size : cfg.train_sizes)
    for (Method m : cfg.methods) cells.push_back({size, m});

  std::vector<SweepCellResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const auto [size, method] = cells[i];
      if (size > full_train.length())
        throw std::invalid_argument("run_sweep: training size exceeds available data");
      TimeSeriesPanel train = full_train;
      train.values = full_train.values.bottomRows(size);

      const FittedMethod fitted = fit_method_cv(train, method, cfg.p, cfg.grid, cfg.folds);
      const LagDesign hd = build_holdout_design(train, holdout, cfg.p);
      const MseResult mse = holdout_mse(predict_holdout(fitted, hd), hd.Y);

      SweepCellResult& cell = results[i];
      cell.method = method;
      cell.train_size = size;
      cell.mse = mse.mse;
      cell.rel_mse = relative_mse(mse.mse, reference_mse);
      cell.params = fitted.params;
      cell.per_time_errors = mse.per_time;
      if (fitted.has_w()) {
        const GrangerGraph g = granger_graph_from_w(fitted.model);
        const GraphStats stats = graph_stats(g);
        cell.n_edges = stats.n_edges;
        cell.n_leading = stats.n_leading;
        if (truth) cell.granger_acc = granger_accuracy(g, *truth);
      }
    }
  };

  unsigned n_threads = cfg.n_threads > 0 ? cfg.n_threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, cells.size()));
  std::vector<std::future<void>> futures;
  for (unsigned t = 0; t < n_threads; ++t)
    futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();

  // significance flags for our methods vs the competitors, in row order
  std::map<std::pair<int, Method>, const SweepCellResult*> by_key;
  for (const auto& cell : results) by_key[{cell.train_size, cell.method}] = &cell;
  for (auto& cell : results) {
    if (cell.method != Method::Scvar && cell.method != Method::Mcvar) continue;
    for (Method other : cfg.methods) {
      if (other == cell.method) continue;
      const auto it = by_key.find({cell.train_size, other});
      if (it == by_key.end()) continue;
      cell.significance += to_string(
          paired_ttest_onesided(cell.per_time_errors, it->second->per_time_errors, 0.05));
    }
  }
  return results;
}

}  // namespace leadvar
