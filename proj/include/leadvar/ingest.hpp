#pragma once

#include <string>
#include <vector>

#include "leadvar/panel.hpp"

namespace leadvar {

enum class Frequency { Daily, Quarterly, None };
Frequency frequency_from_string(const std::string& s);

struct CsvSchema {
  std::string date_column = "date";
  std::vector<std::string> series;  // empty = all non-date columns
  char delimiter = ',';
  Frequency frequency = Frequency::None;
};

/// Loads a UTF-8 CSV with a header row into a panel.  Dates must be
/// chronological; gaps at the declared frequency are rejected.  Daily dates
/// are ISO YYYY-MM-DD, quarterly dates are YYYYQn.
TimeSeriesPanel load_csv_panel(const std::string& path, const CsvSchema& schema);

/// Applies the transforms in order; differencing transforms shrink all
/// series to the common surviving length.
TimeSeriesPanel run_pipeline(const TimeSeriesPanel& panel, const std::vector<TransformSpec>& specs);

}  // namespace leadvar
