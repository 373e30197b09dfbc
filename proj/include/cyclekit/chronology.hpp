#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclekit/errors.hpp"
#include "cyclekit/time_series.hpp"

namespace cyclekit {

enum class Phase { A_upswing, B_downswing };

inline const char* to_string(Phase p) { return p == Phase::A_upswing ? "A_upswing" : "B_downswing"; }

inline Phase phase_from_string(const std::string& s) {
  if (s == "A_upswing" || s == "A") return Phase::A_upswing;
  if (s == "B_downswing" || s == "B") return Phase::B_downswing;
  throw parse_error("unknown phase '" + s + "'");
}

// The source tables report boundary dates as year ranges ("1870-1875"),
// never single years; ranges are kept as ranges everywhere.
struct YearRange {
  double earliest = 0.0;
  double latest = 0.0;

  bool operator==(const YearRange&) const = default;
};

struct WavePhase {
  int wave_number = 0;
  Phase phase = Phase::A_upswing;
  YearRange begin;
  std::optional<YearRange> end;  // absent iff uncertain_end
  bool uncertain_end = false;
  std::string source;  // which embedded table(s) the row came from
  std::string note;    // verbatim prose where the source is prose

  bool operator==(const WavePhase&) const = default;
};

struct Chronology {
  std::string version;
  std::vector<WavePhase> phases;

  bool operator==(const Chronology&) const = default;
};

inline void validate(const Chronology& c) {
  if (c.phases.empty()) throw size_error("chronology has no phases");
  for (const WavePhase& p : c.phases) {
    if (p.wave_number < 1) throw domain_error("wave_number must be >= 1");
    if (!(p.begin.earliest <= p.begin.latest))
      throw domain_error("begin range inverted in wave " + std::to_string(p.wave_number));
    if (p.end.has_value() == p.uncertain_end)
      throw domain_error("uncertain_end must mark exactly the phases without an end range");
    if (p.end) {
      if (!(p.end->earliest <= p.end->latest))
        throw domain_error("end range inverted in wave " + std::to_string(p.wave_number));
      if (!(p.begin.latest < p.end->earliest))
        throw domain_error("begin must precede end in wave " + std::to_string(p.wave_number));
    }
  }
  for (std::size_t i = 1; i < c.phases.size(); ++i) {
    const WavePhase& prev = c.phases[i - 1];
    const WavePhase& cur = c.phases[i];
    if (cur.begin.earliest < prev.begin.earliest)
      throw domain_error("phases must be ordered by begin year");
    if (cur.wave_number == prev.wave_number && !(prev.phase == Phase::A_upswing && cur.phase == Phase::B_downswing))
      throw domain_error("phases within a wave must alternate A then B");
  }
}

// Kondratieff chronology embedded verbatim from the two source tables
// (long-waves table: waves 1-3; continuation table: waves 3-5). The wave 3
// seam is the tables' own conflict: phase A ends 1914-1920 while phase B
// begins "From 1914 to 1928/29"; both rows are kept as printed under their
// own source tags. Wave 5 B's end is printed "?" and carries uncertain_end.
inline const Chronology& builtin_chronology() {
  static const Chronology chron = {
      "kondratieff-chronology/1",
      {
          {1, Phase::A_upswing, {1788, 1792}, YearRange{1810, 1817}, false, "table-1",
           "end of the 1780s or beginning of the 1790s"},
          {1, Phase::B_downswing, {1810, 1817}, YearRange{1844, 1851}, false, "table-1", ""},
          {2, Phase::A_upswing, {1844, 1851}, YearRange{1870, 1875}, false, "table-1", ""},
          {2, Phase::B_downswing, {1870, 1875}, YearRange{1890, 1896}, false, "table-1", ""},
          {3, Phase::A_upswing, {1890, 1896}, YearRange{1914, 1920}, false, "table-1,2", ""},
          {3, Phase::B_downswing, {1914, 1929}, YearRange{1939, 1950}, false, "table-2",
           "From 1914 to 1928/29"},
          {4, Phase::A_upswing, {1939, 1950}, YearRange{1968, 1974}, false, "table-2", ""},
          {4, Phase::B_downswing, {1968, 1974}, YearRange{1984, 1991}, false, "table-2", ""},
          {5, Phase::A_upswing, {1984, 1991}, YearRange{2008, 2010}, false, "table-2", ""},
          {5, Phase::B_downswing, {2008, 2010}, std::nullopt, true, "table-2", "end marked ?"},
      },
  };
  return chron;
}

enum class BoundaryConvention { earliest, latest, midpoint };

inline const char* to_string(BoundaryConvention c) {
  switch (c) {
    case BoundaryConvention::earliest: return "earliest";
    case BoundaryConvention::latest: return "latest";
    case BoundaryConvention::midpoint: return "midpoint";
  }
  return "?";
}

inline double resolve(const YearRange& r, BoundaryConvention convention) {
  switch (convention) {
    case BoundaryConvention::earliest: return r.earliest;
    case BoundaryConvention::latest: return r.latest;
    case BoundaryConvention::midpoint: return 0.5 * (r.earliest + r.latest);
  }
  return r.earliest;
}

// Maps a year to the phase whose [begin, end) interval, with both boundary
// ranges resolved by the convention, contains it. Years before the first
// phase, in a convention-induced gap, or at/after the begin of a phase with
// an uncertain end map to none.
inline std::optional<WavePhase> detect_phase(double year, const Chronology& chronology,
                                             BoundaryConvention convention) {
  validate(chronology);
  for (const WavePhase& p : chronology.phases) {
    if (!p.end) continue;
    double begin = resolve(p.begin, convention);
    double end = resolve(*p.end, convention);
    if (year >= begin && year < end) return p;
  }
  return std::nullopt;
}

// Table 3: average annual world GDP growth (percent) per wave phase, in the
// table's two versions (phase windows differ between them for waves 3-5).
struct YearWindow {
  double start = 0.0;
  double end = 0.0;

  bool operator==(const YearWindow&) const = default;
};

struct PhaseGrowthRecord {
  int wave_number = 0;
  std::string phase;  // "end_of_A", "A", or "B"
  YearWindow years_v1;
  YearWindow years_v2;
  double rate_v1 = 0.0;
  double rate_v2 = 0.0;

  bool operator==(const PhaseGrowthRecord&) const = default;
};

inline const std::vector<PhaseGrowthRecord>& builtin_phase_growth() {
  static const std::vector<PhaseGrowthRecord> records = {
      {2, "end_of_A", {1871, 1875}, {1871, 1875}, 2.09, 2.09},
      {2, "B", {1876, 1894}, {1876, 1894}, 1.68, 1.68},
      {3, "A", {1895, 1913}, {1895, 1929}, 2.57, 2.34},
      {3, "B", {1914, 1946}, {1930, 1946}, 1.50, 0.98},
      {4, "A", {1947, 1973}, {1947, 1973}, 4.84, 4.84},
      {4, "B", {1974, 1991}, {1974, 1983}, 3.05, 2.88},
      {5, "A", {1992, 2007}, {1984, 2007}, 3.49, 3.42},
  };
  return records;
}

// Arithmetic mean of the percent-growth samples whose year lies in
// [start, end] inclusive, one result per window.
inline std::vector<double> phase_average_growth(const GrowthSeries& growth,
                                                const std::vector<YearWindow>& windows) {
  if (growth.mode != GrowthMode::percent)
    throw domain_error("phase_average_growth requires a percent-mode growth series");
  if (growth.values.empty()) throw size_error("empty growth series");
  const double eps = 1e-9;
  std::vector<double> out;
  out.reserve(windows.size());
  for (const YearWindow& w : windows) {
    if (!(w.end >= w.start))
      throw range_error("window end " + std::to_string(w.end) + " precedes start " +
                        std::to_string(w.start));
    if (w.start < growth.start_time - eps || w.end > growth.end_time() + eps)
      throw range_error("window " + std::to_string(w.start) + "-" + std::to_string(w.end) +
                        " lies outside the series span " + std::to_string(growth.start_time) + "-" +
                        std::to_string(growth.end_time()));
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < growth.values.size(); ++i) {
      double t = growth.time_at(i);
      if (t >= w.start - eps && t <= w.end + eps) {
        sum += growth.values[i];
        ++count;
      }
    }
    if (count == 0)
      throw range_error("window " + std::to_string(w.start) + "-" + std::to_string(w.end) +
                        " contains no samples");
    out.push_back(sum / static_cast<double>(count));
  }
  return out;
}

// --- JSON round trip -------------------------------------------------------
// Schema (documented in the repo README): every boundary is an explicit
// range; phases without a known end carry end_earliest/end_latest = null and
// uncertain_end = true.

inline nlohmann::json chronology_to_json(const Chronology& c) {
  nlohmann::json phases = nlohmann::json::array();
  for (const WavePhase& p : c.phases) {
    nlohmann::json j{
        {"wave", p.wave_number},
        {"phase", to_string(p.phase)},
        {"begin_earliest", p.begin.earliest},
        {"begin_latest", p.begin.latest},
        {"end_earliest", p.end ? nlohmann::json(p.end->earliest) : nlohmann::json(nullptr)},
        {"end_latest", p.end ? nlohmann::json(p.end->latest) : nlohmann::json(nullptr)},
        {"uncertain_end", p.uncertain_end},
        {"source", p.source},
        {"note", p.note},
    };
    phases.push_back(std::move(j));
  }
  return nlohmann::json{{"version", c.version}, {"phases", std::move(phases)}};
}

inline Chronology chronology_from_json(const nlohmann::json& j) {
  Chronology out;
  try {
    out.version = j.at("version").get<std::string>();
    for (const nlohmann::json& pj : j.at("phases")) {
      WavePhase p;
      p.wave_number = pj.at("wave").get<int>();
      p.phase = phase_from_string(pj.at("phase").get<std::string>());
      p.begin = {pj.at("begin_earliest").get<double>(), pj.at("begin_latest").get<double>()};
      if (!pj.at("end_earliest").is_null() && !pj.at("end_latest").is_null())
        p.end = YearRange{pj.at("end_earliest").get<double>(), pj.at("end_latest").get<double>()};
      p.uncertain_end = pj.at("uncertain_end").get<bool>();
      p.source = pj.value("source", "");
      p.note = pj.value("note", "");
      out.phases.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("chronology JSON: ") + e.what());
  }
  validate(out);
  return out;
}

inline nlohmann::json phase_growth_to_json(const std::vector<PhaseGrowthRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const PhaseGrowthRecord& r : records) {
    arr.push_back(nlohmann::json{
        {"wave", r.wave_number},
        {"phase", r.phase},
        {"years_v1", {r.years_v1.start, r.years_v1.end}},
        {"years_v2", {r.years_v2.start, r.years_v2.end}},
        {"rate_v1", r.rate_v1},
        {"rate_v2", r.rate_v2},
    });
  }
  return arr;
}

inline std::vector<PhaseGrowthRecord> phase_growth_from_json(const nlohmann::json& j) {
  std::vector<PhaseGrowthRecord> out;
  try {
    for (const nlohmann::json& rj : j) {
      PhaseGrowthRecord r;
      r.wave_number = rj.at("wave").get<int>();
      r.phase = rj.at("phase").get<std::string>();
      r.years_v1 = {rj.at("years_v1").at(0).get<double>(), rj.at("years_v1").at(1).get<double>()};
      r.years_v2 = {rj.at("years_v2").at(0).get<double>(), rj.at("years_v2").at(1).get<double>()};
      r.rate_v1 = rj.at("rate_v1").get<double>();
      r.rate_v2 = rj.at("rate_v2").get<double>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("phase growth JSON: ") + e.what());
  }
  return out;
}

}  // namespace cyclekit
