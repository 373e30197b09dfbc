// cyclekit command-line tool: file-in, file-out analyses over the library.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation/usage error.
// All numeric output uses shortest round-trip decimal formatting, so repeated
// identical invocations produce byte-identical files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cyclekit/cyclekit.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Configuration file
// ---------------------------------------------------------------------------

struct Settings {
  double lambda_quarterly = cyclekit::defaults::lambda_quarterly;
  double lambda_annual = cyclekit::defaults::lambda_annual;
  int truncation = cyclekit::defaults::truncation;
  double min_prominence_ratio = cyclekit::defaults::min_prominence_ratio;
  int harmonic_order = cyclekit::defaults::harmonic_order;
  double harmonic_tolerance = cyclekit::defaults::harmonic_tolerance;
  std::vector<cyclekit::CycleBand> bands = cyclekit::canonical_bands();
};

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cyclekit::io_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw cyclekit::parse_error(path + ": " + e.what());
  }
}

double expect_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw cyclekit::config_error("config key '" + key + "' must be a number");
  return v.get<double>();
}

int expect_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw cyclekit::config_error("config key '" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<cyclekit::CycleBand> parse_bands(const json& v) {
  if (!v.is_array() || v.empty())
    throw cyclekit::config_error("config key 'bands' must be a non-empty array");
  std::vector<cyclekit::CycleBand> out;
  for (const json& b : v) {
    if (!b.is_object()) throw cyclekit::config_error("each entry of 'bands' must be an object");
    cyclekit::CycleBand band;
    band.period_min = 0.0;
    band.period_max = kInf;
    for (const auto& [key, value] : b.items()) {
      if (key == "name") {
        if (!value.is_string()) throw cyclekit::config_error("band 'name' must be a string");
        band.name = value.get<std::string>();
      } else if (key == "period_min") {
        band.period_min = expect_number(value, "bands.period_min");
      } else if (key == "period_max") {
        band.period_max = value.is_null() ? kInf : expect_number(value, "bands.period_max");
      } else {
        throw cyclekit::config_error("unknown band key '" + key + "'");
      }
    }
    if (band.name.empty()) throw cyclekit::config_error("band entry missing 'name'");
    cyclekit::validate(band);
    out.push_back(band);
  }
  cyclekit::validate_bands(out);
  return out;
}

void apply_config(Settings& s, const json& j, const std::string& path) {
  if (!j.is_object()) throw cyclekit::config_error(path + ": config root must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "lambda_quarterly") {
      s.lambda_quarterly = expect_number(value, key);
      if (s.lambda_quarterly < 0.0) throw cyclekit::config_error("lambda_quarterly must be >= 0");
    } else if (key == "lambda_annual") {
      s.lambda_annual = expect_number(value, key);
      if (s.lambda_annual < 0.0) throw cyclekit::config_error("lambda_annual must be >= 0");
    } else if (key == "truncation") {
      s.truncation = expect_integer(value, key);
      if (s.truncation < 1) throw cyclekit::config_error("truncation must be >= 1");
    } else if (key == "min_prominence_ratio") {
      s.min_prominence_ratio = expect_number(value, key);
      if (s.min_prominence_ratio < 0.0)
        throw cyclekit::config_error("min_prominence_ratio must be >= 0");
    } else if (key == "harmonic_order") {
      s.harmonic_order = expect_integer(value, key);
      if (s.harmonic_order < 1) throw cyclekit::config_error("harmonic_order must be >= 1");
    } else if (key == "harmonic_tolerance") {
      s.harmonic_tolerance = expect_number(value, key);
      if (s.harmonic_tolerance < 0.0)
        throw cyclekit::config_error("harmonic_tolerance must be >= 0");
    } else if (key == "bands") {
      s.bands = parse_bands(value);
    } else {
      throw cyclekit::config_error(path + ": unknown config key '" + key + "'");
    }
  }
}

// Resolution order: --config flag, then CYCLEKIT_CONFIG, then ./cyclekit.json
// if present, then built-in defaults. A path named explicitly must exist.
Settings load_settings(const std::string& flag_path) {
  std::string path;
  if (!flag_path.empty()) {
    path = flag_path;
  } else if (const char* env = std::getenv("CYCLEKIT_CONFIG"); env != nullptr && *env != '\0') {
    path = env;
  } else if (fs::exists("cyclekit.json")) {
    path = "cyclekit.json";
  }
  Settings s;
  if (!path.empty()) apply_config(s, load_json_file(path), path);
  return s;
}

std::optional<double> settings_lambda(double step, const Settings& s) {
  if (std::abs(step - 0.25) <= 1e-9) return s.lambda_quarterly;
  if (std::abs(step - 1.0) <= 1e-9) return s.lambda_annual;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

struct Formats {
  bool csv = true;
  bool json_out = true;
};

Formats parse_formats(const std::string& spec) {
  Formats f{false, false};
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string token = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token == "csv") {
      f.csv = true;
    } else if (token == "json") {
      f.json_out = true;
    } else {
      throw cyclekit::config_error("--formats entries must be 'csv' or 'json', got '" + token + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return f;
}

struct InputOpts {
  std::string path;
  int time_col = 0;
  int value_col = 1;
};

cyclekit::TimeSeries load_input(const InputOpts& in) {
  if (in.time_col < 0 || in.value_col < 0)
    throw cyclekit::config_error("--time-col/--value-col must be >= 0");
  if (in.time_col == in.value_col)
    throw cyclekit::config_error("--time-col and --value-col must differ");
  cyclekit::CsvSchema schema;
  schema.time_column = static_cast<std::size_t>(in.time_col);
  schema.value_column = static_cast<std::size_t>(in.value_col);
  return cyclekit::load_csv_file(in.path, schema);
}

fs::path prepare_output_dir(const std::string& dir) {
  fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw cyclekit::io_error("cannot create output directory " + p.string());
  return p;
}

void note_written(const fs::path& p) { std::cout << "wrote " << p.string() << '\n'; }

void write_json_output(const fs::path& path, const json& j) {
  cyclekit::write_json_file(path.string(), j);
  note_written(path);
}

json band_to_json(const cyclekit::CycleBand& band) {
  json j{{"name", band.name}, {"period_min", band.period_min}};
  if (std::isinf(band.period_max)) {
    j["period_max"] = nullptr;
  } else {
    j["period_max"] = band.period_max;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Tone / medium input files
// ---------------------------------------------------------------------------

double expect_field_number(const json& v, const std::string& context) {
  if (!v.is_number()) throw cyclekit::parse_error(context + " must be a number");
  return v.get<double>();
}

cyclekit::ToneSet read_tones(const std::string& path) {
  json j = load_json_file(path);
  if (!j.is_array() || j.empty())
    throw cyclekit::parse_error(path + ": tones file must be a non-empty JSON array");
  cyclekit::ToneSet set;
  for (const json& t : j) {
    if (!t.is_object()) throw cyclekit::parse_error(path + ": each tone must be an object");
    double amplitude = std::numeric_limits<double>::quiet_NaN();
    double frequency = std::numeric_limits<double>::quiet_NaN();
    double phase = 0.0;
    for (const auto& [key, value] : t.items()) {
      if (key == "amplitude") {
        amplitude = expect_field_number(value, path + ": tone amplitude");
      } else if (key == "frequency") {
        frequency = expect_field_number(value, path + ": tone frequency");
      } else if (key == "phase") {
        phase = expect_field_number(value, path + ": tone phase");
      } else {
        throw cyclekit::parse_error(path + ": unknown tone key '" + key + "'");
      }
    }
    if (std::isnan(amplitude)) throw cyclekit::parse_error(path + ": tone missing 'amplitude'");
    if (std::isnan(frequency)) throw cyclekit::parse_error(path + ": tone missing 'frequency'");
    set.tones.push_back(cyclekit::make_tone(amplitude, frequency, phase));
  }
  cyclekit::validate(set);
  return set;
}

cyclekit::NonlinearMedium read_medium(const std::string& path) {
  json j = load_json_file(path);
  if (!j.is_object()) throw cyclekit::parse_error(path + ": medium file must be a JSON object");
  cyclekit::NonlinearMedium m;
  for (const auto& [key, value] : j.items()) {
    double v = expect_field_number(value, path + ": medium key '" + key + "'");
    if (key == "a1") {
      m.a1 = v;
    } else if (key == "a2") {
      m.a2 = v;
    } else if (key == "a3") {
      m.a3 = v;
    } else if (key == "kerr_kappa") {
      m.kerr_kappa = v;
    } else if (key == "raman_gain") {
      m.raman_gain = v;
    } else if (key == "sbs_reflectivity") {
      m.sbs_reflectivity = v;
    } else if (key == "sbs_doppler_shift") {
      m.sbs_doppler_shift = v;
    } else {
      throw cyclekit::parse_error(path + ": unknown medium key '" + key + "'");
    }
  }
  cyclekit::validate(m);
  return m;
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

struct DecomposeOpts {
  InputOpts in;
  double lambda = 0.0;
  bool lambda_set = false;
  bool log_first = false;
  std::string reference;
};

void run_decompose(const DecomposeOpts& o, const Settings& s, const std::string& out_dir,
                   const Formats& formats) {
  cyclekit::TimeSeries y = load_input(o.in);
  if (o.log_first) y = cyclekit::log_transform(y);
  double lambda = 0.0;
  if (o.lambda_set) {
    lambda = o.lambda;
  } else if (std::optional<double> d = settings_lambda(y.step, s)) {
    lambda = *d;
  } else {
    throw cyclekit::config_error("--lambda is required: no default smoothing for step " +
                                 cyclekit::format_double(y.step));
  }
  cyclekit::TrendCycleDecomposition dec = cyclekit::hp_filter(y, lambda);

  std::optional<cyclekit::TimeSeries> ref;
  if (!o.reference.empty()) {
    ref = cyclekit::load_csv_file(o.reference);
    bool aligned = ref->values.size() == dec.cycle.values.size() &&
                   std::abs(ref->step - dec.cycle.step) <= 1e-9 * dec.cycle.step &&
                   std::abs(ref->start_time - dec.cycle.start_time) <=
                       1e-9 * std::max(1.0, std::abs(dec.cycle.start_time));
    if (!aligned)
      throw cyclekit::size_error(
          "--reference series must match the input start, step, and length");
  }

  fs::path dir = prepare_output_dir(out_dir);
  if (formats.csv) {
    {
      std::ofstream f = cyclekit::open_output((dir / "decomposition.csv").string());
      cyclekit::write_decomposition_csv(f, dec);
      note_written(dir / "decomposition.csv");
    }
    {
      std::ofstream f = cyclekit::open_output((dir / "cycle.dat").string());
      cyclekit::write_cycle_plot(f, dec);
      note_written(dir / "cycle.dat");
    }
    if (ref) {
      std::ofstream f = cyclekit::open_output((dir / "cycle_vs_reference.csv").string());
      f << "time,cycle,reference,difference\n";
      for (std::size_t i = 0; i < dec.cycle.values.size(); ++i) {
        f << cyclekit::format_double(dec.cycle.time_at(i)) << ','
          << cyclekit::format_double(dec.cycle.values[i]) << ','
          << cyclekit::format_double(ref->values[i]) << ','
          << cyclekit::format_double(dec.cycle.values[i] - ref->values[i]) << '\n';
      }
      note_written(dir / "cycle_vs_reference.csv");
    }
  }
  if (formats.json_out) {
    write_json_output(dir / "decomposition.json", cyclekit::decomposition_sidecar(dec));
  }
}

// ---------------------------------------------------------------------------
// growth
// ---------------------------------------------------------------------------

struct GrowthOpts {
  InputOpts in;
  std::string mode = "percent";
};

void run_growth(const GrowthOpts& o, const std::string& out_dir, const Formats& formats) {
  cyclekit::GrowthMode mode;
  if (o.mode == "percent") {
    mode = cyclekit::GrowthMode::percent;
  } else if (o.mode == "absolute") {
    mode = cyclekit::GrowthMode::absolute;
  } else {
    throw cyclekit::config_error("--mode must be 'percent' or 'absolute'");
  }
  cyclekit::TimeSeries y = load_input(o.in);
  cyclekit::GrowthSeries g = cyclekit::growth(y, mode);

  fs::path dir = prepare_output_dir(out_dir);
  if (formats.csv) {
    std::ofstream f = cyclekit::open_output((dir / "growth.csv").string());
    cyclekit::write_growth_csv(f, g);
    note_written(dir / "growth.csv");
  }
  if (formats.json_out) {
    write_json_output(dir / "growth.json", json{{"mode", cyclekit::to_string(mode)},
                                                {"observations", g.values.size()},
                                                {"start_time", g.start_time},
                                                {"step", g.step}});
  }
}

// ---------------------------------------------------------------------------
// bandpass
// ---------------------------------------------------------------------------

struct BandpassOpts {
  InputOpts in;
  std::string band_name;
  double period_min = 0.0;
  bool period_min_set = false;
  double period_max = kInf;
  bool period_max_set = false;
  int truncation = 0;
  bool truncation_set = false;
};

void run_bandpass(const BandpassOpts& o, const Settings& s, const std::string& out_dir,
                  const Formats& formats) {
  cyclekit::CycleBand band;
  if (!o.band_name.empty() && (o.period_min_set || o.period_max_set))
    throw cyclekit::config_error("--band cannot be combined with --period-min/--period-max");
  if (!o.band_name.empty()) {
    band = cyclekit::band_by_name(o.band_name, s.bands);
  } else if (o.period_min_set) {
    band.name = "Custom";
    band.period_min = o.period_min;
    band.period_max = o.period_max_set ? o.period_max : kInf;
    cyclekit::validate(band);
  } else {
    throw cyclekit::config_error("one of --band or --period-min is required");
  }
  const int truncation = o.truncation_set ? o.truncation : s.truncation;

  cyclekit::TimeSeries y = load_input(o.in);
  cyclekit::FilterWeights w = cyclekit::bandpass_weights(band, y.step, truncation);
  cyclekit::TimeSeries filtered = cyclekit::apply_bandpass(y, band, truncation);

  // Gain sampled on a fixed grid from 0 to the Nyquist frequency.
  constexpr int kGridPoints = 401;
  std::vector<double> grid_f(kGridPoints), grid_gain(kGridPoints);
  for (int k = 0; k < kGridPoints; ++k) {
    grid_f[static_cast<std::size_t>(k)] =
        static_cast<double>(k) / (2.0 * y.step * static_cast<double>(kGridPoints - 1));
    grid_gain[static_cast<std::size_t>(k)] =
        cyclekit::frequency_response(w, grid_f[static_cast<std::size_t>(k)]);
  }

  fs::path dir = prepare_output_dir(out_dir);
  if (formats.csv) {
    {
      std::ofstream f = cyclekit::open_output((dir / "weights.csv").string());
      cyclekit::write_weights_csv(f, w);
      note_written(dir / "weights.csv");
    }
    {
      std::ofstream f = cyclekit::open_output((dir / "filtered.csv").string());
      cyclekit::write_series_csv(f, filtered);
      note_written(dir / "filtered.csv");
    }
    {
      std::ofstream f = cyclekit::open_output((dir / "response.csv").string());
      f << "frequency,gain\n";
      for (int k = 0; k < kGridPoints; ++k) {
        f << cyclekit::format_double(grid_f[static_cast<std::size_t>(k)]) << ','
          << cyclekit::format_double(grid_gain[static_cast<std::size_t>(k)]) << '\n';
      }
      note_written(dir / "response.csv");
    }
  }
  if (formats.json_out) {
    double weight_sum = 0.0;
    for (double wj : w.weights) weight_sum += wj;
    write_json_output(dir / "bandpass.json",
                      json{{"band", band_to_json(band)},
                           {"truncation", truncation},
                           {"step", y.step},
                           {"input_observations", y.values.size()},
                           {"output_observations", filtered.values.size()},
                           {"weight_sum", weight_sum}});
  }
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumOpts {
  InputOpts in;
  std::string detrend = "hp";
  double lambda = 0.0;
  bool lambda_set = false;
  std::string taper = "none";
  int segments = 1;
  int pad = 1;
  double min_prominence = 0.0;
  bool min_prominence_set = false;
  double harmonic_tolerance = 0.0;
  bool harmonic_tolerance_set = false;
};

void run_spectrum(const SpectrumOpts& o, const Settings& s, const std::string& out_dir,
                  const Formats& formats) {
  cyclekit::TimeSeries y = load_input(o.in);

  cyclekit::Detrend detrend = cyclekit::Detrend::none();
  if (o.detrend == "none") {
    detrend = cyclekit::Detrend::none();
  } else if (o.detrend == "mean") {
    detrend = cyclekit::Detrend::mean();
  } else if (o.detrend == "linear") {
    detrend = cyclekit::Detrend::linear();
  } else if (o.detrend == "hp") {
    double lambda = 0.0;
    if (o.lambda_set) {
      lambda = o.lambda;
    } else if (std::optional<double> d = settings_lambda(y.step, s)) {
      lambda = *d;
    } else {
      throw cyclekit::config_error(
          "--lambda is required for --detrend hp: no default smoothing for step " +
          cyclekit::format_double(y.step));
    }
    detrend = cyclekit::Detrend::hp(lambda);
  } else {
    throw cyclekit::config_error("--detrend must be one of none|mean|linear|hp");
  }

  cyclekit::TaperMode taper;
  if (o.taper == "none") {
    taper = cyclekit::TaperMode::none;
  } else if (o.taper == "hann") {
    taper = cyclekit::TaperMode::hann;
  } else {
    throw cyclekit::config_error("--taper must be 'none' or 'hann'");
  }

  cyclekit::Spectrum spectrum = cyclekit::periodogram(y, detrend, taper, o.segments, o.pad);
  const double ratio = o.min_prominence_set ? o.min_prominence : s.min_prominence_ratio;
  std::vector<cyclekit::SpectralPeak> peaks = cyclekit::find_peaks(spectrum, ratio);
  std::vector<cyclekit::PeakClassification> classified = cyclekit::classify_peaks(peaks, s.bands);

  // Harmonic-ratio report: emitted when both a Kondratieff and a Kuznets peak
  // are present; the strongest peak of each band is compared.
  std::optional<json> harmonic_report;
  const cyclekit::PeakClassification* kondratieff = nullptr;
  const cyclekit::PeakClassification* kuznets = nullptr;
  for (const cyclekit::PeakClassification& c : classified) {
    if (kondratieff == nullptr && c.band == "Kondratieff") kondratieff = &c;
    if (kuznets == nullptr && c.band == "Kuznets") kuznets = &c;
  }
  if (kondratieff != nullptr && kuznets != nullptr) {
    const double tol = o.harmonic_tolerance_set ? o.harmonic_tolerance : s.harmonic_tolerance;
    cyclekit::HarmonicRatioResult res = cyclekit::harmonic_ratio_test(
        kondratieff->peak.frequency, kuznets->peak.frequency, s.harmonic_order, tol);
    harmonic_report = json{{"f_low", kondratieff->peak.frequency},
                           {"f_high", kuznets->peak.frequency},
                           {"low_band", "Kondratieff"},
                           {"high_band", "Kuznets"},
                           {"order", s.harmonic_order},
                           {"tolerance", tol},
                           {"ratio", res.ratio},
                           {"pass", res.pass}};
  }

  fs::path dir = prepare_output_dir(out_dir);
  if (formats.csv) {
    std::ofstream f = cyclekit::open_output((dir / "spectrum.csv").string());
    cyclekit::write_spectrum_csv(f, spectrum);
    note_written(dir / "spectrum.csv");
  }
  if (formats.json_out) {
    write_json_output(dir / "peaks.json", cyclekit::peaks_to_json(classified));
    if (harmonic_report) write_json_output(dir / "harmonic_report.json", *harmonic_report);
  }
}

// ---------------------------------------------------------------------------
// mix products
// ---------------------------------------------------------------------------

struct MixProductsOpts {
  std::string tones;
  std::string medium;
  int max_order = 3;
  double t0 = 0.0;
  double t1 = 0.0;
  double dt = 0.0;
};

void run_mix_products(const MixProductsOpts& o, const std::string& out_dir,
                      const Formats& formats) {
  cyclekit::ToneSet tones = read_tones(o.tones);
  cyclekit::NonlinearMedium medium = read_medium(o.medium);
  std::vector<cyclekit::MixingProduct> products =
      cyclekit::predict_products(tones, medium, o.max_order);

  cyclekit::TimeSeries base = cyclekit::synthesize(tones, o.t0, o.t1, o.dt);
  cyclekit::TimeSeries response = cyclekit::apply_polynomial(base, medium);
  cyclekit::Spectrum spectrum = cyclekit::periodogram(response, cyclekit::Detrend::none());

  // Per predicted line: amplitude measured from the folded power at the
  // nearest frequency bin (half the two-sided power except at DC/Nyquist).
  struct Row {
    const cyclekit::MixingProduct* product;
    double measured;
    double relative_error;
  };
  const double df = spectrum.bin_width();
  std::vector<Row> rows;
  rows.reserve(products.size());
  for (const cyclekit::MixingProduct& p : products) {
    std::size_t k = static_cast<std::size_t>(std::llround(p.frequency / df));
    if (k >= spectrum.power.size()) k = spectrum.power.size() - 1;
    const bool edge =
        (k == 0) || std::abs(spectrum.frequencies[k] * 2.0 * spectrum.step - 1.0) <= 1e-9;
    double measured = std::sqrt((edge ? 1.0 : 2.0) * spectrum.power[k] * df);
    rows.push_back({&p, measured, std::abs(measured - p.amplitude) / p.amplitude});
  }

  fs::path dir = prepare_output_dir(out_dir);
  if (formats.csv) {
    {
      std::ofstream f = cyclekit::open_output((dir / "synthesized.csv").string());
      cyclekit::write_series_csv(f, response);
      note_written(dir / "synthesized.csv");
    }
    {
      std::ofstream f = cyclekit::open_output((dir / "mix_spectrum.csv").string());
      cyclekit::write_spectrum_csv(f, spectrum);
      note_written(dir / "mix_spectrum.csv");
    }
    {
      std::ofstream f = cyclekit::open_output((dir / "comparison.csv").string());
      f << "kind,frequency,predicted,measured,relative_error\n";
      for (const Row& r : rows) {
        f << cyclekit::to_string(r.product->kind) << ','
          << cyclekit::format_double(r.product->frequency) << ','
          << cyclekit::format_double(r.product->amplitude) << ','
          << cyclekit::format_double(r.measured) << ','
          << cyclekit::format_double(r.relative_error) << '\n';
      }
      note_written(dir / "comparison.csv");
    }
  }
  if (formats.json_out) {
    write_json_output(dir / "products.json", cyclekit::products_to_json(products));
  }
}

// ---------------------------------------------------------------------------
// mix kerr
// ---------------------------------------------------------------------------

struct MixKerrOpts {
  std::string tones;
  std::string medium;
  double kappa = 0.0;
  bool kappa_set = false;
  std::string mode = "spm";
  double t0 = 0.0;
  double t1 = 0.0;
  double dt = 0.0;
};

void run_mix_kerr(const MixKerrOpts& o, const std::string& out_dir, const Formats& formats) {
  cyclekit::ToneSet tones = read_tones(o.tones);
  double kappa = 0.0;
  if (o.kappa_set) {
    kappa = o.kappa;
  } else if (!o.medium.empty()) {
    kappa = read_medium(o.medium).kerr_kappa;
  } else {
    throw cyclekit::config_error("--kappa (or --medium providing kerr_kappa) is required");
  }
  cyclekit::KerrMode mode;
  if (o.mode == "spm") {
    mode = cyclekit::KerrMode::spm;
  } else if (o.mode == "xpm") {
    mode = cyclekit::KerrMode::xpm;
  } else {
    throw cyclekit::config_error("--mode must be 'spm' or 'xpm'");
  }

  cyclekit::Spectrum spectrum = cyclekit::kerr_phase_modulation(tones, kappa, mode, o.t0, o.t1, o.dt);
  double total_power = 0.0;
  for (double p : spectrum.power) total_power += p;
  total_power *= spectrum.bin_width();

  fs::path dir = prepare_output_dir(out_dir);
  if (formats.csv) {
    std::ofstream f = cyclekit::open_output((dir / "kerr_spectrum.csv").string());
    cyclekit::write_spectrum_csv(f, spectrum);
    note_written(dir / "kerr_spectrum.csv");
  }
  if (formats.json_out) {
    write_json_output(dir / "kerr.json", json{{"mode", cyclekit::to_string(mode)},
                                              {"kappa", kappa},
                                              {"dt", o.dt},
                                              {"bins", spectrum.power.size()},
                                              {"total_power", total_power}});
  }
}

// ---------------------------------------------------------------------------
// mix raman
// ---------------------------------------------------------------------------

struct MixRamanOpts {
  double p_high = 0.0;
  double p_low = 0.0;
  double gain = 0.0;
  bool gain_set = false;
  std::string medium;
  double duration = 0.0;
  double dt = 0.0;
};

void run_mix_raman(const MixRamanOpts& o, const std::string& out_dir, const Formats& formats) {
  double gain = 0.0;
  if (o.gain_set) {
    gain = o.gain;
  } else if (!o.medium.empty()) {
    gain = read_medium(o.medium).raman_gain;
  } else {
    throw cyclekit::config_error("--gain (or --medium providing raman_gain) is required");
  }
  cyclekit::RamanTrajectory tr = cyclekit::raman_transfer(o.p_high, o.p_low, gain, o.duration, o.dt);

  const double sum0 = tr.p_high.front() + tr.p_low.front();
  double max_drift = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    double drift = std::abs(tr.p_high[i] + tr.p_low[i] - sum0) / (sum0 > 0.0 ? sum0 : 1.0);
    max_drift = std::max(max_drift, drift);
  }

  fs::path dir = prepare_output_dir(out_dir);
  if (formats.csv) {
    std::ofstream f = cyclekit::open_output((dir / "raman.csv").string());
    cyclekit::write_trajectory_csv(f, tr);
    note_written(dir / "raman.csv");
  }
  if (formats.json_out) {
    write_json_output(dir / "raman.json",
                      json{{"gain", gain},
                           {"duration", o.duration},
                           {"dt", o.dt},
                           {"steps", tr.times.size() - 1},
                           {"sum_initial", sum0},
                           {"sum_final", tr.p_high.back() + tr.p_low.back()},
                           {"max_sum_drift", max_drift},
                           {"max_relative_step_change", tr.max_relative_step_change}});
  }
}

// ---------------------------------------------------------------------------
// mix brillouin
// ---------------------------------------------------------------------------

struct MixBrillouinOpts {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
  std::string medium;
  double reflectivity = 0.0;
  bool reflectivity_set = false;
  double doppler_shift = 0.0;
  bool doppler_shift_set = false;
};

void run_mix_brillouin(const MixBrillouinOpts& o, const std::string& out_dir,
                       const Formats& formats) {
  cyclekit::NonlinearMedium medium;
  if (!o.medium.empty()) medium = read_medium(o.medium);
  if (o.reflectivity_set) medium.sbs_reflectivity = o.reflectivity;
  if (o.doppler_shift_set) medium.sbs_doppler_shift = o.doppler_shift;
  cyclekit::validate(medium);

  cyclekit::Tone incident = cyclekit::make_tone(o.amplitude, o.frequency, o.phase);
  cyclekit::validate(incident);
  cyclekit::Tone reflected = cyclekit::brillouin_reflect(incident, medium);

  if (!formats.json_out) return;
  fs::path dir = prepare_output_dir(out_dir);
  write_json_output(dir / "brillouin.json",
                    json{{"incident",
                          {{"amplitude", incident.amplitude},
                           {"frequency", incident.frequency},
                           {"phase", incident.phase}}},
                         {"reflected",
                          {{"amplitude", reflected.amplitude},
                           {"frequency", reflected.frequency},
                           {"phase", reflected.phase}}},
                         {"reflectivity", medium.sbs_reflectivity},
                         {"doppler_shift", medium.sbs_doppler_shift}});
}

// ---------------------------------------------------------------------------
// chronology
// ---------------------------------------------------------------------------

void run_chronology_show(const std::string& out_dir, const Formats& formats) {
  if (!formats.json_out) return;
  fs::path dir = prepare_output_dir(out_dir);
  write_json_output(dir / "chronology.json",
                    cyclekit::chronology_to_json(cyclekit::builtin_chronology()));
  write_json_output(dir / "phase_growth.json",
                    cyclekit::phase_growth_to_json(cyclekit::builtin_phase_growth()));
}

struct PhaseAverageOpts {
  InputOpts in;
  int table_version = 1;
};

void run_chronology_phase_average(const PhaseAverageOpts& o, const std::string& out_dir,
                                  const Formats& formats) {
  if (o.table_version != 1 && o.table_version != 2)
    throw cyclekit::config_error("--version must be 1 or 2");
  cyclekit::TimeSeries y = load_input(o.in);

  cyclekit::GrowthSeries g;
  g.start_time = y.start_time;
  g.step = y.step;
  g.values = y.values;
  g.mode = cyclekit::GrowthMode::percent;

  const std::vector<cyclekit::PhaseGrowthRecord>& records = cyclekit::builtin_phase_growth();
  std::vector<cyclekit::YearWindow> windows;
  windows.reserve(records.size());
  for (const cyclekit::PhaseGrowthRecord& r : records)
    windows.push_back(o.table_version == 1 ? r.years_v1 : r.years_v2);
  std::vector<double> rates = cyclekit::phase_average_growth(g, windows);

  json rows = json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    rows.push_back(json{{"wave", records[i].wave_number},
                        {"phase", records[i].phase},
                        {"window", {windows[i].start, windows[i].end}},
                        {"table_rate", o.table_version == 1 ? records[i].rate_v1 : records[i].rate_v2},
                        {"measured_rate", rates[i]}});
  }

  if (!formats.json_out) return;
  fs::path dir = prepare_output_dir(out_dir);
  write_json_output(dir / "phase_average.json",
                    json{{"table_version", o.table_version}, {"rows", rows}});
}

}  // namespace

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"cyclekit: business-cycle extraction and nonlinear-medium analysis"};
  app.set_version_flag("--version", std::string("cyclekit ") + cyclekit::version);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file (default: $CYCLEKIT_CONFIG, then ./cyclekit.json)");
  std::string formats_spec = "csv,json";
  app.add_option("--formats", formats_spec, "Output formats to write: csv, json, or csv,json");
  std::string out_dir = ".";
  app.add_option("--output-dir", out_dir, "Directory for output files");

  auto add_input_options = [](CLI::App* cmd, InputOpts& in) {
    cmd->add_option("--input", in.path, "Input CSV file")->required();
    cmd->add_option("--time-col", in.time_col, "Zero-based time column index");
    cmd->add_option("--value-col", in.value_col, "Zero-based value column index");
  };

  // decompose
  DecomposeOpts dopt;
  CLI::App* cmd_decompose = app.add_subcommand("decompose", "HP trend/cycle decomposition");
  add_input_options(cmd_decompose, dopt.in);
  CLI::Option* dopt_lambda =
      cmd_decompose->add_option("--lambda", dopt.lambda, "Smoothing parameter (>= 0)");
  cmd_decompose->add_flag("--log", dopt.log_first, "Log-transform the series first");
  cmd_decompose->add_option("--reference", dopt.reference,
                            "Reference cycle CSV; also writes cycle-minus-reference");

  // growth
  GrowthOpts gopt;
  CLI::App* cmd_growth = app.add_subcommand("growth", "Period-over-period growth series");
  add_input_options(cmd_growth, gopt.in);
  cmd_growth->add_option("--mode", gopt.mode, "Growth mode: percent or absolute");

  // bandpass
  BandpassOpts bopt;
  CLI::App* cmd_bandpass = app.add_subcommand("bandpass", "Band-pass filter a series");
  add_input_options(cmd_bandpass, bopt.in);
  cmd_bandpass->add_option("--band", bopt.band_name, "Named cycle band (e.g. Juglar)");
  CLI::Option* bopt_min =
      cmd_bandpass->add_option("--period-min", bopt.period_min, "Custom band: shortest period");
  CLI::Option* bopt_max =
      cmd_bandpass->add_option("--period-max", bopt.period_max, "Custom band: longest period");
  CLI::Option* bopt_trunc =
      cmd_bandpass->add_option("--truncation", bopt.truncation, "Half-width K of the filter");

  // spectrum
  SpectrumOpts sopt;
  CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "Periodogram, peaks, band labels");
  add_input_options(cmd_spectrum, sopt.in);
  cmd_spectrum->add_option("--detrend", sopt.detrend, "Detrend mode: none|mean|linear|hp");
  CLI::Option* sopt_lambda =
      cmd_spectrum->add_option("--lambda", sopt.lambda, "Smoothing parameter for --detrend hp");
  cmd_spectrum->add_option("--taper", sopt.taper, "Taper: none or hann");
  cmd_spectrum->add_option("--segments", sopt.segments, "Segments to average (Welch)");
  cmd_spectrum->add_option("--pad", sopt.pad, "Zero-padding factor");
  CLI::Option* sopt_prom = cmd_spectrum->add_option("--min-prominence", sopt.min_prominence,
                                                    "Peak prominence threshold, x median power");
  CLI::Option* sopt_tol = cmd_spectrum->add_option("--harmonic-tolerance", sopt.harmonic_tolerance,
                                                   "Relative tolerance of the harmonic test");

  // mix
  CLI::App* cmd_mix = app.add_subcommand("mix", "Nonlinear medium interactions");
  cmd_mix->require_subcommand(1);
  cmd_mix->fallthrough();

  MixProductsOpts mpopt;
  CLI::App* cmd_mix_products =
      cmd_mix->add_subcommand("products", "Predicted vs measured mixing products");
  cmd_mix_products->add_option("--tones", mpopt.tones, "Tones JSON file")->required();
  cmd_mix_products->add_option("--medium", mpopt.medium, "Medium JSON file")->required();
  cmd_mix_products->add_option("--max-order", mpopt.max_order, "Highest polynomial order (2 or 3)");
  cmd_mix_products->add_option("--t0", mpopt.t0, "Window start");
  cmd_mix_products->add_option("--t1", mpopt.t1, "Window end")->required();
  cmd_mix_products->add_option("--dt", mpopt.dt, "Sample spacing")->required();

  MixKerrOpts mkopt;
  CLI::App* cmd_mix_kerr = cmd_mix->add_subcommand("kerr", "Kerr phase-modulation spectrum");
  cmd_mix_kerr->add_option("--tones", mkopt.tones, "Tones JSON file")->required();
  cmd_mix_kerr->add_option("--medium", mkopt.medium, "Medium JSON file (kerr_kappa)");
  CLI::Option* mkopt_kappa = cmd_mix_kerr->add_option("--kappa", mkopt.kappa, "Kerr coefficient");
  cmd_mix_kerr->add_option("--mode", mkopt.mode, "spm or xpm");
  cmd_mix_kerr->add_option("--t0", mkopt.t0, "Window start");
  cmd_mix_kerr->add_option("--t1", mkopt.t1, "Window end")->required();
  cmd_mix_kerr->add_option("--dt", mkopt.dt, "Sample spacing")->required();

  MixRamanOpts mropt;
  CLI::App* cmd_mix_raman = cmd_mix->add_subcommand("raman", "Raman power-transfer trajectories");
  cmd_mix_raman->add_option("--p-high", mropt.p_high, "Initial high-band power")->required();
  cmd_mix_raman->add_option("--p-low", mropt.p_low, "Initial low-band power")->required();
  CLI::Option* mropt_gain = cmd_mix_raman->add_option("--gain", mropt.gain, "Transfer gain");
  cmd_mix_raman->add_option("--medium", mropt.medium, "Medium JSON file (raman_gain)");
  cmd_mix_raman->add_option("--duration", mropt.duration, "Integration time")->required();
  cmd_mix_raman->add_option("--dt", mropt.dt, "Integration step")->required();

  MixBrillouinOpts mbopt;
  CLI::App* cmd_mix_brillouin =
      cmd_mix->add_subcommand("brillouin", "Brillouin reflection of a tone");
  cmd_mix_brillouin->add_option("--amplitude", mbopt.amplitude, "Incident amplitude")->required();
  cmd_mix_brillouin->add_option("--frequency", mbopt.frequency, "Incident frequency")->required();
  cmd_mix_brillouin->add_option("--phase", mbopt.phase, "Incident phase");
  cmd_mix_brillouin->add_option("--medium", mbopt.medium, "Medium JSON file");
  CLI::Option* mbopt_r =
      cmd_mix_brillouin->add_option("--reflectivity", mbopt.reflectivity, "Reflectivity in [0,1]");
  CLI::Option* mbopt_d =
      cmd_mix_brillouin->add_option("--doppler-shift", mbopt.doppler_shift, "Downshift (>= 0)");

  // chronology
  CLI::App* cmd_chronology = app.add_subcommand("chronology", "Embedded long-wave tables");
  cmd_chronology->require_subcommand(1);
  cmd_chronology->fallthrough();

  CLI::App* cmd_chronology_show =
      cmd_chronology->add_subcommand("show", "Write the embedded tables as JSON");

  PhaseAverageOpts paopt;
  CLI::App* cmd_phase_average = cmd_chronology->add_subcommand(
      "phase-average", "Average a growth series over the phase windows");
  add_input_options(cmd_phase_average, paopt.in);
  cmd_phase_average->add_option("--version", paopt.table_version,
                                "Window set: 1 or 2 (table versions)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    dopt.lambda_set = dopt_lambda->count() > 0;
    bopt.period_min_set = bopt_min->count() > 0;
    bopt.period_max_set = bopt_max->count() > 0;
    bopt.truncation_set = bopt_trunc->count() > 0;
    sopt.lambda_set = sopt_lambda->count() > 0;
    sopt.min_prominence_set = sopt_prom->count() > 0;
    sopt.harmonic_tolerance_set = sopt_tol->count() > 0;
    mkopt.kappa_set = mkopt_kappa->count() > 0;
    mropt.gain_set = mropt_gain->count() > 0;
    mbopt.reflectivity_set = mbopt_r->count() > 0;
    mbopt.doppler_shift_set = mbopt_d->count() > 0;

    const Settings settings = load_settings(config_path);
    const Formats formats = parse_formats(formats_spec);

    if (cmd_decompose->parsed()) {
      run_decompose(dopt, settings, out_dir, formats);
    } else if (cmd_growth->parsed()) {
      run_growth(gopt, out_dir, formats);
    } else if (cmd_bandpass->parsed()) {
      run_bandpass(bopt, settings, out_dir, formats);
    } else if (cmd_spectrum->parsed()) {
      run_spectrum(sopt, settings, out_dir, formats);
    } else if (cmd_mix->parsed()) {
      if (cmd_mix_products->parsed()) {
        run_mix_products(mpopt, out_dir, formats);
      } else if (cmd_mix_kerr->parsed()) {
        run_mix_kerr(mkopt, out_dir, formats);
      } else if (cmd_mix_raman->parsed()) {
        run_mix_raman(mropt, out_dir, formats);
      } else if (cmd_mix_brillouin->parsed()) {
        run_mix_brillouin(mbopt, out_dir, formats);
      }
    } else if (cmd_chronology->parsed()) {
      if (cmd_chronology_show->parsed()) {
        run_chronology_show(out_dir, formats);
      } else if (cmd_phase_average->parsed()) {
        run_chronology_phase_average(paopt, out_dir, formats);
      }
    }
  } catch (const cyclekit::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cyclekit::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
