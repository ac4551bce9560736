#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "leadvar/cv.hpp"
#include "leadvar/evaluate.hpp"
#include "leadvar/experiment.hpp"
#include "leadvar/granger.hpp"
#include "leadvar/panel.hpp"

namespace leadvar {

/// Labeled CSV of a Kp x K weight matrix: rows are (series, lag) pairs,
/// columns are tasks.
std::string w_to_csv(const VarModel& model);
VarModel w_from_csv(const std::string& path);

std::string panel_to_csv(const TimeSeriesPanel& panel);
TimeSeriesPanel panel_from_csv(const std::string& path);

nlohmann::json graph_to_json(const GrangerGraph& g);
GrangerGraph graph_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json cv_table_to_json(const CvResult& cv);
nlohmann::json state_to_json(const FittedMethod& fitted);

std::string trace_to_csv(const std::vector<double>& trace);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace leadvar
