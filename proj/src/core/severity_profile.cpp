#include "core/severity_profile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/ini.hpp"

namespace lcorrupt {

namespace {

constexpr const char* kKindNames[kCorruptionKindCount] = {
    "rain",          "snow",          "rain_wg",       "snow_wg",   "fog",
    "bg_noise",      "upsample",      "uni_noise",     "gau_noise", "imp_noise",
    "uni_noise_rad", "gau_noise_rad", "imp_noise_rad", "local_inc", "local_dec",
    "beam_del",      "layer_del",     "cutout",
};

std::vector<double> scalar(double v) { return {v}; }

}  // namespace

const char* kind_name(CorruptionKind kind) { return kKindNames[static_cast<int>(kind)]; }

CorruptionKind kind_from_name(const std::string& name) {
  for (int i = 0; i < kCorruptionKindCount; ++i) {
    if (name == kKindNames[i]) return static_cast<CorruptionKind>(i);
  }
  throw unknown_kind_error("unknown corruption kind: '" + name + "'");
}

const std::array<CorruptionKind, kCorruptionKindCount>& all_kinds() {
  static const std::array<CorruptionKind, kCorruptionKindCount> kinds = [] {
    std::array<CorruptionKind, kCorruptionKindCount> a{};
    for (int i = 0; i < kCorruptionKindCount; ++i) a[i] = static_cast<CorruptionKind>(i);
    return a;
  }();
  return kinds;
}

bool is_weather_kind(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::rain:
    case CorruptionKind::snow:
    case CorruptionKind::rain_wg:
    case CorruptionKind::snow_wg:
    case CorruptionKind::fog:
      return true;
    default:
      return false;
  }
}

void validate_spec(const CorruptionSpec& spec) {
  const int k = static_cast<int>(spec.kind);
  if (k < 0 || k >= kCorruptionKindCount) {
    throw unknown_kind_error("corruption spec: invalid kind ordinal " + std::to_string(k));
  }
  if (spec.severity < 1 || spec.severity > kSeverityLevels) {
    throw invalid_argument_error("corruption spec: severity " + std::to_string(spec.severity) +
                                 " outside [1, 5]");
  }
}

SeverityProfile SeverityProfile::defaults() {
  SeverityProfile p;

  // Noise repositioning: meters of displacement scale per severity.
  const std::vector<double> noise_scale = {0.02, 0.04, 0.06, 0.08, 0.10};
  p.set(CorruptionKind::gau_noise, "sigma", noise_scale);
  p.set(CorruptionKind::uni_noise, "amplitude", noise_scale);
  p.set(CorruptionKind::gau_noise_rad, "sigma", noise_scale);
  p.set(CorruptionKind::uni_noise_rad, "amplitude", noise_scale);
  p.set(CorruptionKind::imp_noise, "fraction", {0.05, 0.10, 0.15, 0.20, 0.25});
  p.set(CorruptionKind::imp_noise, "magnitude", scalar(0.10));
  p.set(CorruptionKind::imp_noise_rad, "fraction", {0.05, 0.10, 0.15, 0.20, 0.25});
  p.set(CorruptionKind::imp_noise_rad, "magnitude", scalar(0.10));

  // Point synthesis.
  p.set(CorruptionKind::bg_noise, "add_fraction", {0.01, 0.02, 0.03, 0.04, 0.05});
  p.set(CorruptionKind::upsample, "fraction", {0.02, 0.04, 0.06, 0.08, 0.10});
  p.set(CorruptionKind::upsample, "jitter", scalar(0.1));

  // Density.
  const std::vector<double> clusters = {10, 20, 30, 40, 50};
  p.set(CorruptionKind::local_inc, "clusters", clusters);
  p.set(CorruptionKind::local_inc, "neighborhood", scalar(100));
  p.set(CorruptionKind::local_inc, "interp_points", scalar(80));
  p.set(CorruptionKind::local_dec, "clusters", clusters);
  p.set(CorruptionKind::local_dec, "neighborhood", scalar(100));
  p.set(CorruptionKind::local_dec, "remove_count", scalar(75));
  p.set(CorruptionKind::cutout, "clusters", clusters);
  p.set(CorruptionKind::cutout, "neighborhood", scalar(20));
  p.set(CorruptionKind::beam_del, "delete_fraction", {0.10, 0.20, 0.30, 0.40, 0.50});
  p.set(CorruptionKind::layer_del, "layers", {8, 16, 24, 32, 40});

  // Weather. Parametric approximations; see README for what these stand for.
  const std::vector<double> rain_alpha = {0.003, 0.006, 0.009, 0.012, 0.015};
  const std::vector<double> rain_scatter = {0.0005, 0.0010, 0.0015, 0.0020, 0.0025};
  const std::vector<double> snow_alpha = {0.0045, 0.009, 0.0135, 0.018, 0.0225};
  const std::vector<double> snow_scatter = {0.002, 0.004, 0.006, 0.008, 0.010};
  const std::vector<double> wet_drop = {0.1, 0.2, 0.3, 0.4, 0.5};

  for (CorruptionKind kind : {CorruptionKind::rain, CorruptionKind::rain_wg}) {
    p.set(kind, "attenuation", rain_alpha);
    p.set(kind, "scatter_prob", rain_scatter);
    p.set(kind, "drop_prob", {0.002, 0.004, 0.006, 0.008, 0.010});
  }
  for (CorruptionKind kind : {CorruptionKind::snow, CorruptionKind::snow_wg}) {
    p.set(kind, "attenuation", snow_alpha);
    p.set(kind, "scatter_prob", snow_scatter);
    p.set(kind, "drop_prob", {0.005, 0.010, 0.015, 0.020, 0.025});
  }
  for (CorruptionKind kind : {CorruptionKind::rain, CorruptionKind::snow, CorruptionKind::rain_wg,
                              CorruptionKind::snow_wg}) {
    p.set(kind, "scatter_range_max", scalar(30.0));
    p.set(kind, "intensity_floor", scalar(0.02));
  }
  p.set(CorruptionKind::fog, "attenuation", {0.01, 0.02, 0.03, 0.045, 0.06});
  p.set(CorruptionKind::fog, "scatter_prob", {0.001, 0.002, 0.003, 0.0045, 0.006});
  p.set(CorruptionKind::fog, "drop_prob", {0.003, 0.006, 0.009, 0.012, 0.015});
  p.set(CorruptionKind::fog, "halo_max", scalar(15.0));
  p.set(CorruptionKind::fog, "intensity_floor", scalar(0.02));

  for (CorruptionKind kind : {CorruptionKind::rain_wg, CorruptionKind::snow_wg}) {
    p.set(kind, "wet_drop_prob", wet_drop);
    p.set(kind, "wet_factor", scalar(0.5));
    p.set(kind, "ground_z", scalar(-1.73));
    p.set(kind, "ground_band", scalar(0.2));
  }

  return p;
}

SeverityProfile SeverityProfile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("severity profile: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  SeverityProfile p = defaults();
  p.merge_ini_text(buffer.str());
  p.validate();
  return p;
}

void SeverityProfile::merge_ini_text(const std::string& text) {
  const IniDocument doc = IniDocument::parse(text);
  for (const IniSection& section : doc.sections) {
    if (section.name.empty()) {
      if (!section.entries.empty()) {
        throw config_error("severity profile: entries before any [kind] section");
      }
      continue;
    }
    const CorruptionKind kind = kind_from_name(section.name);
    for (const auto& [key, value] : section.entries) {
      std::vector<double> values;
      for (const std::string& token : split_tokens(value)) {
        values.push_back(parse_double(token));
      }
      set(kind, key, std::move(values));
    }
  }
}

void SeverityProfile::set(CorruptionKind kind, const std::string& param,
                          std::vector<double> values) {
  if (values.size() != 1 && values.size() != kSeverityLevels) {
    throw config_error("severity profile: parameter '" + param + "' of " + kind_name(kind) +
                       " needs 1 or 5 values, got " + std::to_string(values.size()));
  }
  table_[kind_name(kind)][param] = std::move(values);
}

double SeverityProfile::param(CorruptionKind kind, const std::string& param, int severity) const {
  if (severity < 1 || severity > kSeverityLevels) {
    throw invalid_argument_error("severity profile: severity " + std::to_string(severity) +
                                 " outside [1, 5]");
  }
  const auto kind_it = table_.find(kind_name(kind));
  if (kind_it == table_.end()) {
    throw config_error(std::string("severity profile: no parameters for kind ") +
                       kind_name(kind));
  }
  const auto param_it = kind_it->second.find(param);
  if (param_it == kind_it->second.end()) {
    throw config_error(std::string("severity profile: ") + kind_name(kind) +
                       " has no parameter '" + param + "'");
  }
  const std::vector<double>& values = param_it->second;
  return values.size() == 1 ? values[0] : values[static_cast<std::size_t>(severity - 1)];
}

bool SeverityProfile::has(CorruptionKind kind, const std::string& param) const {
  const auto kind_it = table_.find(kind_name(kind));
  if (kind_it == table_.end()) return false;
  return kind_it->second.count(param) > 0;
}

void SeverityProfile::validate() const {
  const SeverityProfile reference = defaults();
  for (const auto& [kind, params] : reference.table_) {
    const auto kind_it = table_.find(kind);
    if (kind_it == table_.end()) {
      throw config_error("severity profile: missing kind " + kind);
    }
    for (const auto& [name, values] : params) {
      (void)values;
      if (kind_it->second.find(name) == kind_it->second.end()) {
        throw config_error("severity profile: " + kind + " is missing parameter '" + name + "'");
      }
    }
  }
  for (const auto& [kind, params] : table_) {
    for (const auto& [name, values] : params) {
      if (values.size() != 1 && values.size() != kSeverityLevels) {
        throw config_error("severity profile: " + kind + "." + name + " needs 1 or 5 values");
      }
      for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1]) {
          throw config_error("severity profile: " + kind + "." + name +
                             " must be monotone non-decreasing in severity");
        }
      }
    }
  }
}

std::string SeverityProfile::render() const {
  std::ostringstream out;
  char buf[32];
  bool first = true;
  for (const auto& [kind, params] : table_) {
    if (!first) out << "\n";
    first = false;
    out << "[" << kind << "]\n";
    for (const auto& [name, values] : params) {
      out << name << " =";
      for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << " " << buf;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace lcorrupt
