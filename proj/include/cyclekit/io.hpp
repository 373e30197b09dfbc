#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "cyclekit/bandpass.hpp"
#include "cyclekit/errors.hpp"
#include "cyclekit/hp_filter.hpp"
#include "cyclekit/nonlinear_medium.hpp"
#include "cyclekit/spectrum.hpp"
#include "cyclekit/time_series.hpp"

namespace cyclekit {

// Shortest decimal representation that round-trips to the same double.
// Every file writer goes through this, which makes outputs byte-stable.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw io_error("number formatting failed");
  return std::string(buf, ptr);
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no platform newline translation
  if (!out) throw io_error("cannot write " + path);
  return out;
}

inline void write_series_csv(std::ostream& out, const TimeSeries& series,
                             const std::string& time_header = "time",
                             const std::string& value_header = "value") {
  out << time_header << ',' << value_header << '\n';
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out << format_double(series.time_at(i)) << ',' << format_double(series.values[i]) << '\n';
  }
}

inline void write_growth_csv(std::ostream& out, const GrowthSeries& series) {
  out << "time,growth\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out << format_double(series.time_at(i)) << ',' << format_double(series.values[i]) << '\n';
  }
}

inline void write_decomposition_csv(std::ostream& out, const TrendCycleDecomposition& dec) {
  out << "time,y,trend,cycle\n";
  for (std::size_t i = 0; i < dec.source.values.size(); ++i) {
    out << format_double(dec.source.time_at(i)) << ',' << format_double(dec.source.values[i]) << ','
        << format_double(dec.trend.values[i]) << ',' << format_double(dec.cycle.values[i]) << '\n';
  }
}

// gnuplot-ready two-column file: time and cycle, space separated.
inline void write_cycle_plot(std::ostream& out, const TrendCycleDecomposition& dec) {
  for (std::size_t i = 0; i < dec.cycle.values.size(); ++i) {
    out << format_double(dec.cycle.time_at(i)) << ' ' << format_double(dec.cycle.values[i]) << '\n';
  }
}

inline nlohmann::json decomposition_sidecar(const TrendCycleDecomposition& dec) {
  return nlohmann::json{
      {"lambda", dec.lambda},
      {"T", dec.source.values.size()},
      {"objective_value", hp_objective(dec.source, dec.trend, dec.lambda)},
  };
}

inline void write_weights_csv(std::ostream& out, const FilterWeights& w) {
  out << "lag,weight\n";
  for (int j = -w.truncation; j <= w.truncation; ++j) {
    out << j << ',' << format_double(w.weight(j)) << '\n';
  }
}

inline void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  out << "frequency,period,power\n";
  for (std::size_t k = 0; k < s.power.size(); ++k) {
    double f = s.frequencies[k];
    out << format_double(f) << ',' << format_double(f > 0.0 ? 1.0 / f : std::numeric_limits<double>::infinity())
        << ',' << format_double(s.power[k]) << '\n';
  }
}

inline nlohmann::json peaks_to_json(const std::vector<PeakClassification>& classified) {
  nlohmann::json arr = nlohmann::json::array();
  for (const PeakClassification& c : classified) {
    arr.push_back(nlohmann::json{
        {"frequency", c.peak.frequency},
        {"period", c.peak.period},
        {"power", c.peak.power},
        {"prominence", c.peak.prominence},
        {"band", c.band},
    });
  }
  return arr;
}

inline nlohmann::json products_to_json(const std::vector<MixingProduct>& products) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MixingProduct& p : products) {
    arr.push_back(nlohmann::json{
        {"kind", to_string(p.kind)},
        {"frequency", p.frequency},
        {"amplitude", p.amplitude},
        {"parents", p.parents},
    });
  }
  return arr;
}

inline void write_trajectory_csv(std::ostream& out, const RamanTrajectory& tr) {
  out << "t,P_high,P_low\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    out << format_double(tr.times[i]) << ',' << format_double(tr.p_high[i]) << ','
        << format_double(tr.p_low[i]) << '\n';
  }
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
}

}  // namespace cyclekit
