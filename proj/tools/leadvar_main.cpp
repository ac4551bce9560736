#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "leadvar/experiment.hpp"
#include "leadvar/ingest.hpp"
#include "leadvar/io.hpp"
#include "leadvar/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace leadvar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

// Tracks files written by one subcommand so partial outputs can be removed
// when the run fails.
class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    write_file(path.string(), content);
    written_.push_back(path);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void discard_all() {
    for (const auto& path : written_) {
      std::error_code ec;
      fs::remove(path, ec);
    }
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

json manifest_base(const std::string& subcommand) {
  json m;
  m["tool"] = "leadvar";
  m["version"] = "1.0.0";
  m["subcommand"] = subcommand;
  return m;
}

struct FitConfig {
  std::string data_path;
  bool use_schema = false;  // set when the config carries a "csv" schema block
  CsvSchema schema;
  std::vector<TransformSpec> transforms;
  int p = 3;
  double lambda = 0.1;
  double kappa = 1.0;
  int r = 1;
  int train_size = 0;  // 0 = all rows
  int folds = 5;
};

FitConfig load_fit_config(const std::string& path) {
  FitConfig cfg;
  if (path.empty()) return cfg;
  const json j = json::parse(read_file(path));
  if (j.contains("data")) cfg.data_path = j["data"].get<std::string>();
  if (j.contains("csv")) {
    cfg.use_schema = true;
    const json& c = j["csv"];
    if (c.contains("date_column")) cfg.schema.date_column = c["date_column"].get<std::string>();
    if (c.contains("series")) cfg.schema.series = c["series"].get<std::vector<std::string>>();
    if (c.contains("delimiter")) {
      const std::string d = c["delimiter"].get<std::string>();
      if (d.size() != 1) throw std::invalid_argument("csv.delimiter must be one character");
      cfg.schema.delimiter = d[0];
    }
    if (c.contains("frequency"))
      cfg.schema.frequency = frequency_from_string(c["frequency"].get<std::string>());
  }
  if (j.contains("transforms")) {
    for (const json& t : j["transforms"]) {
      TransformSpec spec;
      spec.kind = transform_kind_from_string(t.at("kind").get<std::string>());
      if (t.contains("period")) spec.period = t["period"].get<int>();
      if (t.contains("series")) spec.series = t["series"].get<std::vector<std::string>>();
      cfg.transforms.push_back(std::move(spec));
    }
  }
  if (j.contains("p")) cfg.p = j["p"].get<int>();
  if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
  if (j.contains("kappa")) cfg.kappa = j["kappa"].get<double>();
  if (j.contains("r")) cfg.r = j["r"].get<int>();
  if (j.contains("train_size")) cfg.train_size = j["train_size"].get<int>();
  if (j.contains("folds")) cfg.folds = j["folds"].get<int>();
  return cfg;
}

TimeSeriesPanel load_training_panel(const FitConfig& cfg) {
  if (cfg.data_path.empty()) throw std::invalid_argument("no data file configured");
  TimeSeriesPanel panel = cfg.use_schema ? load_csv_panel(cfg.data_path, cfg.schema)
                                         : panel_from_csv(cfg.data_path);
  if (!cfg.transforms.empty()) panel = run_pipeline(panel, cfg.transforms);
  if (cfg.train_size > 0) {
    if (cfg.train_size > panel.length())
      throw std::invalid_argument("train_size exceeds panel length");
    panel.values = panel.values.bottomRows(cfg.train_size);
  }
  return panel;
}

void write_fit_outputs(OutputDir& out, const FittedMethod& fitted, const json& manifest) {
  if (fitted.has_w()) out.write("model_w.csv", w_to_csv(fitted.model));
  out.write_json("state.json", state_to_json(fitted));
  if (!fitted.objective_trace.empty())
    out.write("objective_trace.csv", trace_to_csv(fitted.objective_trace));
  out.write_json("manifest.json", manifest);
}

std::string sweep_csv(const std::vector<SweepCellResult>& cells) {
  std::ostringstream out;
  out << "size,method,rel_mse,mse,granger_accuracy,n_edges,n_leading,lambda,kappa,r,"
         "significance\n";
  for (const auto& c : cells) {
    out << c.train_size << "," << to_string(c.method) << "," << c.rel_mse << "," << c.mse << ",";
    if (c.granger_acc) out << *c.granger_acc;
    out << "," << c.n_edges << "," << c.n_leading << "," << c.params.lambda << ","
        << c.params.kappa << ",";
    if (c.params.r) out << *c.params.r;
    out << "," << c.significance << "\n";
  }
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Sparse VAR forecasting with shared leading-indicator structure"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic scenario dataset");
  std::string sim_scenario = "A", sim_out = "out";
  std::uint64_t sim_seed = 0;
  int sim_train = 500, sim_holdout = 500;
  sim->add_option("--scenario", sim_scenario, "Scenario id A-E")->required();
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--t-train", sim_train, "Training length");
  sim->add_option("--t-holdout", sim_holdout, "Holdout length");
  sim->add_option("--out", sim_out, "Output directory")->required();

  // fit / cv-fit share options
  std::string fit_method_name = "scvar", fit_config_path, fit_out = "out", fit_data;
  double opt_lambda = -1, opt_kappa = -1;
  int opt_r = -1, opt_p = -1, opt_train_size = -1;
  const auto add_fit_options = [&](CLI::App* cmd) {
    cmd->add_option("--method", fit_method_name, "mean|rw|ar|lg|glg|scvar|mcvar")->required();
    cmd->add_option("--config", fit_config_path, "JSON config file");
    cmd->add_option("--data", fit_data, "Panel CSV (overrides config)");
    cmd->add_option("--lambda", opt_lambda, "Ridge/lasso penalty (overrides config)");
    cmd->add_option("--kappa", opt_kappa, "Simplex scale (overrides config)");
    cmd->add_option("--r", opt_r, "MCVAR rank (overrides config)");
    cmd->add_option("--p", opt_p, "Lag order (overrides config)");
    cmd->add_option("--train-size", opt_train_size, "Use last N rows (overrides config)");
    cmd->add_option("--out", fit_out, "Output directory")->required();
  };
  auto* fit = app.add_subcommand("fit", "Fit one method with fixed hyperparameters");
  add_fit_options(fit);
  auto* cvfit = app.add_subcommand("cv-fit", "Grid-search hyperparameters by inner CV, then fit");
  add_fit_options(cvfit);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Evaluate a fitted model on a holdout panel");
  std::string eval_model, eval_holdout, eval_train, eval_truth, eval_out = "out";
  eval->add_option("--model", eval_model, "Directory written by fit/cv-fit")->required();
  eval->add_option("--holdout", eval_holdout, "Holdout panel CSV")->required();
  eval->add_option("--train", eval_train, "Training panel CSV (lag context)")->required();
  eval->add_option("--truth", eval_truth, "Directory with true_w.csv and true_graph.json");
  eval->add_option("--out", eval_out, "Output directory")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Training-size sweep over a scenario");
  std::string sweep_config;
  sweep->add_option("--config", sweep_config, "JSON sweep config")->required();

  app.parse(argc, argv);

  if (sim->parsed()) {
    if (sim_scenario.size() != 1) throw CLI::ValidationError("--scenario must be one of A-E");
    OutputDir out(sim_out);
    try {
      const ScenarioSpec spec = scenario_spec(sim_scenario[0], sim_seed);
      const Scenario scenario = make_scenario(spec);
      SimulationConfig cfg;
      cfg.T = sim_train + sim_holdout;
      cfg.seed = sim_seed;
      const TimeSeriesPanel panel = simulate_var(scenario.model, cfg);
      const auto [train, holdout] = split_holdout(panel, sim_holdout);

      out.write("panel.csv", panel_to_csv(panel));
      out.write("train.csv", panel_to_csv(train));
      out.write("holdout.csv", panel_to_csv(holdout));
      out.write("true_w.csv", w_to_csv(scenario.model));
      out.write_json("true_graph.json", graph_to_json(scenario.truth));

      json manifest = manifest_base("simulate");
      manifest["scenario"] = sim_scenario;
      manifest["seed"] = sim_seed;
      manifest["t_train"] = sim_train;
      manifest["t_holdout"] = sim_holdout;
      manifest["p"] = spec.p;
      manifest["cluster_labels"] = scenario.cluster_labels;
      out.write_json("manifest.json", manifest);
    } catch (...) {
      out.discard_all();
      throw;
    }
    return kExitOk;
  }

  if (fit->parsed() || cvfit->parsed()) {
    FitConfig cfg = load_fit_config(fit_config_path);
    if (!fit_data.empty()) cfg.data_path = fit_data;
    if (opt_lambda >= 0) cfg.lambda = opt_lambda;
    if (opt_kappa >= 0) cfg.kappa = opt_kappa;
    if (opt_r >= 0) cfg.r = opt_r;
    if (opt_p >= 0) cfg.p = opt_p;
    if (opt_train_size >= 0) cfg.train_size = opt_train_size;

    const Method method = method_from_string(fit_method_name);
    const TimeSeriesPanel train = load_training_panel(cfg);

    OutputDir out(fit_out);
    try {
      json manifest = manifest_base(fit->parsed() ? "fit" : "cv-fit");
      manifest["method"] = fit_method_name;
      manifest["data"] = cfg.data_path;
      manifest["p"] = cfg.p;
      manifest["train_size"] = cfg.train_size;
      if (!fit_config_path.empty())
        manifest["config"] = json::parse(read_file(fit_config_path));

      if (fit->parsed()) {
        HyperParams params{cfg.lambda, cfg.kappa, cfg.r};
        const FittedMethod fitted = fit_method(train, method, cfg.p, params);
        manifest["lambda"] = cfg.lambda;
        manifest["kappa"] = cfg.kappa;
        manifest["r"] = cfg.r;
        write_fit_outputs(out, fitted, manifest);
      } else {
        Grid grid = default_grid();
        manifest["lambda_grid"] = grid.lambda_values;
        manifest["kappa_grid"] = grid.kappa_values;
        manifest["folds"] = cfg.folds;
        CvResult cv;
        const FittedMethod fitted = fit_method_cv(train, method, cfg.p, grid, cfg.folds, &cv);
        out.write_json("cv_table.json", cv_table_to_json(cv));
        write_fit_outputs(out, fitted, manifest);
      }
    } catch (...) {
      out.discard_all();
      throw;
    }
    return kExitOk;
  }

  if (eval->parsed()) {
    OutputDir out(eval_out);
    try {
      const json state = json::parse(read_file((fs::path(eval_model) / "state.json").string()));
      const Method method = method_from_string(state.at("method").get<std::string>());
      const TimeSeriesPanel train = panel_from_csv(eval_train);
      const TimeSeriesPanel holdout = panel_from_csv(eval_holdout);

      FittedMethod fitted;
      fitted.method = method;
      int p = 1;
      if (fitted.has_w()) {
        fitted.model = w_from_csv((fs::path(eval_model) / "model_w.csv").string());
        p = fitted.model.p;
      } else if (method == Method::Mean) {
        const auto means = state.at("means").get<std::vector<double>>();
        fitted.baseline.kind = BaselineKind::Mean;
        fitted.baseline.means =
            Eigen::Map<const Eigen::VectorXd>(means.data(), means.size());
      } else {
        fitted.baseline.kind = BaselineKind::RandomWalk;
        fitted.baseline.p = 1;
      }

      const LagDesign hd = build_holdout_design(train, holdout, p);
      const MseResult mse = holdout_mse(predict_holdout(fitted, hd), hd.Y);

      // reference: true-model MSE when truth is given, RW holdout MSE otherwise
      double reference = 0.0;
      std::optional<GrangerGraph> truth;
      if (!eval_truth.empty()) {
        const VarModel true_w = w_from_csv((fs::path(eval_truth) / "true_w.csv").string());
        const LagDesign hd_true = build_holdout_design(train, holdout, true_w.p);
        reference = holdout_mse(true_w, hd_true).mse;
        truth = graph_from_json(
            json::parse(read_file((fs::path(eval_truth) / "true_graph.json").string())));
      } else {
        BaselineModel rw = fit_random_walk(p);
        reference = holdout_mse(rw.predict(hd), hd.Y).mse;
      }

      EvalReport report;
      report.per_series_mse = mse.per_series;
      report.mse = mse.mse;
      report.relative_mse = relative_mse(mse.mse, reference);
      if (fitted.has_w()) {
        const GrangerGraph g = granger_graph_from_w(fitted.model);
        const GraphStats stats = graph_stats(g);
        report.n_edges = stats.n_edges;
        report.n_leading = stats.n_leading;
        report.out_degree = stats.out_degree;
        if (truth) report.granger_accuracy = granger_accuracy(g, *truth);
        out.write_json("graph.json", graph_to_json(g));
        out.write("graph.dot", graph_to_dot(g));
      }
      out.write_json("report.json", report_to_json(report));

      json manifest = manifest_base("evaluate");
      manifest["model"] = eval_model;
      manifest["holdout"] = eval_holdout;
      manifest["train"] = eval_train;
      manifest["truth"] = eval_truth;
      out.write_json("manifest.json", manifest);
    } catch (...) {
      out.discard_all();
      throw;
    }
    return kExitOk;
  }

  if (sweep->parsed()) {
    const json j = json::parse(read_file(sweep_config));
    const std::string out_dir = j.at("out").get<std::string>();
    OutputDir out(out_dir);
    try {
      const std::string scenario_id = j.at("scenario").get<std::string>();
      const std::uint64_t seed = j.value("seed", 0);
      const int t_holdout = j.value("t_holdout", 500);

      SweepConfig cfg;
      cfg.train_sizes = j.at("train_sizes").get<std::vector<int>>();
      cfg.p = j.value("p", 3);
      cfg.folds = j.value("folds", 5);
      cfg.grid = default_grid();
      if (j.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : j["methods"]) cfg.methods.push_back(method_from_string(m));
      }

      const ScenarioSpec spec = scenario_spec(scenario_id.at(0), seed);
      const Scenario scenario = make_scenario(spec);
      SimulationConfig sim_cfg;
      sim_cfg.T = *std::max_element(cfg.train_sizes.begin(), cfg.train_sizes.end()) + t_holdout;
      sim_cfg.seed = seed;
      const TimeSeriesPanel panel = simulate_var(scenario.model, sim_cfg);
      const auto [train, holdout] = split_holdout(panel, t_holdout);

      const LagDesign hd = build_holdout_design(train, holdout, cfg.p);
      const double reference = holdout_mse(scenario.model, hd).mse;

      const std::vector<SweepCellResult> cells =
          run_sweep(train, holdout, reference, cfg, &scenario.truth);
      out.write("sweep.csv", sweep_csv(cells));

      json manifest = manifest_base("sweep");
      manifest["config"] = j;
      out.write_json("manifest.json", manifest);
    } catch (...) {
      out.discard_all();
      throw;
    }
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    CLI::App app;
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}
