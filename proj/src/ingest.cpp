#include "leadvar/ingest.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leadvar {

Frequency frequency_from_string(const std::string& s) {
  if (s == "daily") return Frequency::Daily;
  if (s == "quarterly") return Frequency::Quarterly;
  if (s == "none") return Frequency::None;
  throw std::invalid_argument("unknown frequency: " + s);
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) fields.push_back(field);
  if (!line.empty() && line.back() == delim) fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Ordinal of a date under the declared frequency; consecutive observations
// must differ by exactly 1.
long date_ordinal(const std::string& raw, Frequency freq, std::size_t row) {
  const std::string s = strip(raw);
  const auto fail = [&](const std::string& why) -> long {
    throw std::invalid_argument("row " + std::to_string(row) + ": bad date '" + s + "' (" + why +
                                ")");
  };
  if (freq == Frequency::Daily) {
    int y = 0, m = 0, d = 0;
    char dash1 = 0, dash2 = 0;
    std::istringstream ss(s);
    ss >> y >> dash1 >> m >> dash2 >> d;
    if (ss.fail() || dash1 != '-' || dash2 != '-') return fail("expected YYYY-MM-DD");
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return fail("invalid calendar date");
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
  }
  // quarterly: YYYYQn
  const auto qpos = s.find_first_of("Qq");
  if (qpos == std::string::npos) return fail("expected YYYYQn");
  int y = 0, q = 0;
  try {
    y = std::stoi(s.substr(0, qpos));
    q = std::stoi(s.substr(qpos + 1));
  } catch (const std::exception&) {
    return fail("expected YYYYQn");
  }
  if (q < 1 || q > 4) return fail("quarter out of range");
  return 4L * y + (q - 1);
}

}  // namespace

TimeSeriesPanel load_csv_panel(const std::string& path, const CsvSchema& schema) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(file, line)) throw std::invalid_argument("empty CSV file: " + path);
  std::vector<std::string> header = split_line(line, schema.delimiter);
  for (auto& h : header) h = strip(h);

  Eigen::Index date_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == schema.date_column) date_col = static_cast<Eigen::Index>(i);
  if (date_col < 0)
    throw std::invalid_argument("missing date column '" + schema.date_column + "' in " + path);

  std::vector<std::string> names = schema.series;
  if (names.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (static_cast<Eigen::Index>(i) != date_col) names.push_back(header[i]);
  }
  std::vector<Eigen::Index> cols;
  for (const auto& name : names) {
    Eigen::Index idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) idx = static_cast<Eigen::Index>(i);
    if (idx < 0) throw std::invalid_argument("missing series column '" + name + "' in " + path);
    cols.push_back(idx);
  }

  std::vector<std::vector<double>> data;
  long prev_ordinal = 0;
  bool have_prev = false;
  std::size_t row = 1;
  while (std::getline(file, line)) {
    ++row;
    if (strip(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line, schema.delimiter);
    if (fields.size() < header.size())
      throw std::invalid_argument("row " + std::to_string(row) + ": too few fields");

    if (schema.frequency != Frequency::None) {
      const long ord = date_ordinal(fields[date_col], schema.frequency, row);
      if (have_prev) {
        if (ord <= prev_ordinal)
          throw std::invalid_argument("row " + std::to_string(row) +
                                      ": dates must be strictly increasing");
        if (ord != prev_ordinal + 1)
          throw std::invalid_argument("row " + std::to_string(row) +
                                      ": gap in the date sequence");
      }
      prev_ordinal = ord;
      have_prev = true;
    }

    std::vector<double> values;
    values.reserve(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::string cell = strip(fields[cols[j]]);
      if (cell.empty())
        throw std::invalid_argument("row " + std::to_string(row) + ", column '" + names[j] +
                                    "': missing value");
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw std::invalid_argument("row " + std::to_string(row) + ", column '" + names[j] +
                                    "': non-numeric value '" + cell + "'");
      values.push_back(v);
    }
    data.push_back(std::move(values));
  }
  if (data.empty()) throw std::invalid_argument("CSV has no data rows: " + path);

  Eigen::MatrixXd values(data.size(), cols.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) values(i, j) = data[i][j];
  return make_panel(std::move(values), std::move(names));
}

TimeSeriesPanel run_pipeline(const TimeSeriesPanel& panel,
                             const std::vector<TransformSpec>& specs) {
  TimeSeriesPanel out = panel;
  for (const auto& spec : specs) out = apply_transform(out, spec);
  return out;
}

}  // namespace leadvar
