#include "leadvar/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace leadvar {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string w_to_csv(const VarModel& model) {
  const Eigen::Index K = model.n_series();
  const int p = model.p;
  std::ostringstream out;
  out << "series,lag";
  for (Eigen::Index k = 0; k < K; ++k)
    out << "," << (k < static_cast<Eigen::Index>(model.names.size()) ? model.names[k]
                                                                     : "s" + std::to_string(k + 1));
  out << "\n";
  for (Eigen::Index b = 0; b < K; ++b) {
    for (int j = 0; j < p; ++j) {
      out << (b < static_cast<Eigen::Index>(model.names.size()) ? model.names[b]
                                                                : "s" + std::to_string(b + 1))
          << "," << (j + 1);
      for (Eigen::Index k = 0; k < K; ++k) out << "," << fmt(model.W(b * p + j, k));
      out << "\n";
    }
  }
  return out.str();
}

VarModel w_from_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open W CSV: " + path);
  std::string line;
  if (!std::getline(file, line)) throw std::invalid_argument("empty W CSV: " + path);
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 3) throw std::invalid_argument("malformed W CSV header: " + path);

  VarModel model;
  model.names.assign(header.begin() + 2, header.end());
  const Eigen::Index K = static_cast<Eigen::Index>(model.names.size());
  std::vector<std::vector<double>> rows;
  int max_lag = 0;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size())
      throw std::invalid_argument("malformed W CSV row in " + path);
    max_lag = std::max(max_lag, std::stoi(fields[1]));
    std::vector<double> row;
    for (std::size_t i = 2; i < fields.size(); ++i) row.push_back(std::stod(fields[i]));
    rows.push_back(std::move(row));
  }
  if (rows.size() != static_cast<std::size_t>(K * max_lag))
    throw std::invalid_argument("W CSV row count mismatch in " + path);
  model.p = max_lag;
  model.W.resize(K * max_lag, K);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index k = 0; k < K; ++k) model.W(static_cast<Eigen::Index>(i), k) = rows[i][k];
  return model;
}

std::string panel_to_csv(const TimeSeriesPanel& panel) {
  std::ostringstream out;
  out << "t";
  for (const auto& name : panel.names) out << "," << name;
  out << "\n";
  for (Eigen::Index t = 0; t < panel.length(); ++t) {
    out << (t + 1);
    for (Eigen::Index k = 0; k < panel.n_series(); ++k) out << "," << fmt(panel.values(t, k));
    out << "\n";
  }
  return out.str();
}

TimeSeriesPanel panel_from_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open panel CSV: " + path);
  std::string line;
  if (!std::getline(file, line)) throw std::invalid_argument("empty panel CSV: " + path);
  std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header[0] != "t")
    throw std::invalid_argument("malformed panel CSV header: " + path);

  std::vector<std::vector<double>> rows;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size())
      throw std::invalid_argument("malformed panel CSV row in " + path);
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(std::stod(fields[i]));
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd values(rows.size(), header.size() - 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j + 1 < header.size(); ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return make_panel(std::move(values), {header.begin() + 1, header.end()});
}

nlohmann::json graph_to_json(const GrangerGraph& g) {
  nlohmann::json j;
  j["names"] = g.names;
  nlohmann::json edges = nlohmann::json::array();
  for (Eigen::Index l = 0; l < g.n_nodes(); ++l)
    for (Eigen::Index k = 0; k < g.n_nodes(); ++k)
      if (l != k && g.adjacency(l, k)) edges.push_back({{"from", l}, {"to", k}});
  j["n_nodes"] = g.n_nodes();
  j["edges"] = edges;
  return j;
}

GrangerGraph graph_from_json(const nlohmann::json& j) {
  GrangerGraph g;
  const Eigen::Index K = j.at("n_nodes").get<Eigen::Index>();
  g.names = j.at("names").get<std::vector<std::string>>();
  g.adjacency.setConstant(K, K, false);
  for (const auto& e : j.at("edges"))
    g.adjacency(e.at("from").get<Eigen::Index>(), e.at("to").get<Eigen::Index>()) = true;
  return g;
}

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["mse"] = report.mse;
  j["relative_mse"] = report.relative_mse;
  j["per_series_mse"] = std::vector<double>(report.per_series_mse.data(),
                                            report.per_series_mse.data() +
                                                report.per_series_mse.size());
  j["n_edges"] = report.n_edges;
  j["n_leading"] = report.n_leading;
  j["out_degree"] = report.out_degree;
  if (report.granger_accuracy) j["granger_accuracy"] = *report.granger_accuracy;
  return j;
}

nlohmann::json cv_table_to_json(const CvResult& cv) {
  nlohmann::json j;
  nlohmann::json best{{"lambda", cv.best.lambda}, {"kappa", cv.best.kappa}};
  if (cv.best.r) best["r"] = *cv.best.r;
  j["best"] = best;
  j["best_cv_mse"] = cv.best_cv_mse;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& cell : cv.table) {
    nlohmann::json row{{"lambda", cell.params.lambda},
                       {"kappa", cell.params.kappa},
                       {"cv_mse", cell.cv_mse}};
    if (cell.params.r) row["r"] = *cell.params.r;
    table.push_back(row);
  }
  j["table"] = table;
  return j;
}

nlohmann::json state_to_json(const FittedMethod& fitted) {
  nlohmann::json j;
  j["method"] = to_string(fitted.method);
  j["lambda"] = fitted.params.lambda;
  j["kappa"] = fitted.params.kappa;
  if (fitted.params.r) j["r"] = *fitted.params.r;
  const auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  const auto mat = [](const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      rows.emplace_back();
      for (Eigen::Index k = 0; k < m.cols(); ++k) rows.back().push_back(m(i, k));
    }
    return rows;
  };
  if (fitted.scvar_state) {
    j["alpha_bar"] = vec(fitted.scvar_state->alpha_bar);
    j["converged"] = fitted.scvar_state->converged;
  }
  if (fitted.mcvar_state) {
    j["D"] = mat(fitted.mcvar_state->D);
    j["G"] = mat(fitted.mcvar_state->G);
    j["cluster_labels"] = cluster_assignments(fitted.mcvar_state->G);
    j["converged"] = fitted.mcvar_state->converged;
  }
  if (fitted.method == Method::Mean) j["means"] = vec(fitted.baseline.means);
  return j;
}

std::string trace_to_csv(const std::vector<double>& trace) {
  std::ostringstream out;
  out << "iteration,objective\n";
  for (std::size_t i = 0; i < trace.size(); ++i) out << (i + 1) << "," << fmt(trace[i]) << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write file: " + path);
  file << content;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

}  // namespace leadvar
