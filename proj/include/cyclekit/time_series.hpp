#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "cyclekit/errors.hpp"

namespace cyclekit {

// Uniformly sampled level series. The time axis is (start_time, step) in
// years; per-sample timestamps are never stored, which forces the uniform
// sampling every downstream filter requires.
struct TimeSeries {
  double start_time = 0.0;
  double step = 1.0;
  std::vector<double> values;
  std::string label;
  std::string units;

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t i) const { return start_time + static_cast<double>(i) * step; }
  double end_time() const { return values.empty() ? start_time : time_at(values.size() - 1); }
};

inline void validate(const TimeSeries& s) {
  if (s.values.size() < 2) throw size_error("TimeSeries requires length >= 2");
  if (!(s.step > 0.0)) throw spacing_error("TimeSeries requires step > 0");
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!std::isfinite(s.values[i]))
      throw domain_error("TimeSeries value at index " + std::to_string(i) + " is not finite");
  }
}

enum class GrowthMode { absolute, percent };

inline const char* to_string(GrowthMode m) {
  return m == GrowthMode::absolute ? "absolute" : "percent";
}

// Per-period first differences (or percent growth). One sample shorter than
// the source; each difference is stamped with the later of its two years.
struct GrowthSeries {
  double start_time = 0.0;
  double step = 1.0;
  std::vector<double> values;
  GrowthMode mode = GrowthMode::absolute;

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t i) const { return start_time + static_cast<double>(i) * step; }
  double end_time() const { return values.empty() ? start_time : time_at(values.size() - 1); }
};

inline GrowthSeries growth(const TimeSeries& series, GrowthMode mode) {
  validate(series);
  if (mode == GrowthMode::percent) {
    for (std::size_t i = 0; i < series.values.size(); ++i) {
      if (!(series.values[i] > 0.0))
        throw domain_error("percent growth requires strictly positive values (index " +
                           std::to_string(i) + ")");
    }
  }
  GrowthSeries out;
  out.start_time = series.start_time + series.step;
  out.step = series.step;
  out.mode = mode;
  out.values.resize(series.values.size() - 1);
  for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
    out.values[i] = mode == GrowthMode::absolute
                        ? series.values[i + 1] - series.values[i]
                        : 100.0 * (series.values[i + 1] / series.values[i] - 1.0);
  }
  return out;
}

inline TimeSeries log_transform(const TimeSeries& series) {
  validate(series);
  TimeSeries out = series;
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!(series.values[i] > 0.0))
      throw domain_error("log transform requires strictly positive values (index " +
                         std::to_string(i) + ")");
    out.values[i] = std::log(series.values[i]);
  }
  if (!out.units.empty()) out.units = "log(" + out.units + ")";
  return out;
}

// Column mapping for CSV ingestion (0-based).
struct CsvSchema {
  std::size_t time_column = 0;
  std::size_t value_column = 1;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(pos)));
      break;
    }
    cells.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return cells;
}

inline bool parse_number(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;  // from_chars rejects a leading '+'
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace detail

// UTF-8, comma-separated, decimal point only. An optional single header row
// is auto-detected (first row non-numeric). Step is inferred from the first
// gap; subsequent gaps must match it to 1e-9 relative.
inline TimeSeries load_csv(std::istream& in, const CsvSchema& schema = {}) {
  TimeSeries out;
  std::vector<double> times;
  std::string line;
  std::size_t row = 0;
  bool first_data_seen = false;
  while (std::getline(in, line)) {
    ++row;
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    auto cells = detail::split_csv(sv);
    std::size_t needed = std::max(schema.time_column, schema.value_column);
    if (cells.size() <= needed)
      throw parse_error("row " + std::to_string(row) + ": expected at least " +
                        std::to_string(needed + 1) + " columns, got " + std::to_string(cells.size()));
    double t = 0.0, v = 0.0;
    bool ok = detail::parse_number(cells[schema.time_column], t) &&
              detail::parse_number(cells[schema.value_column], v);
    if (!ok) {
      if (!first_data_seen && times.empty()) {
        // Header row: keep the value column's title as the series label.
        out.label = std::string(cells[schema.value_column]);
        first_data_seen = true;
        continue;
      }
      throw parse_error("row " + std::to_string(row) + ": non-numeric cell");
    }
    first_data_seen = true;
    times.push_back(t);
    out.values.push_back(v);
  }
  if (times.size() < 2) throw size_error("CSV has fewer than 2 data rows");
  out.start_time = times[0];
  out.step = times[1] - times[0];
  if (!(out.step > 0.0)) throw spacing_error("times are not strictly increasing at row 2");
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    double gap = times[i + 1] - times[i];
    if (!(gap > 0.0))
      throw spacing_error("times are not strictly increasing (data row " + std::to_string(i + 2) + ")");
    if (std::abs(gap / out.step - 1.0) > 1e-9)
      throw spacing_error("non-uniform spacing at data row " + std::to_string(i + 2) +
                          ": gap " + std::to_string(gap) + " vs step " + std::to_string(out.step));
  }
  validate(out);
  return out;
}

inline TimeSeries load_csv_file(const std::string& path, const CsvSchema& schema = {}) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return load_csv(in, schema);
}

}  // namespace cyclekit
