#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lcorrupt {

// The 18 corruption kinds. Enum order is the public kind ordinal used by the
// frame-seed derivation and must stay stable.
enum class CorruptionKind : int {
  rain = 0,
  snow,
  rain_wg,
  snow_wg,
  fog,
  bg_noise,
  upsample,
  uni_noise,
  gau_noise,
  imp_noise,
  uni_noise_rad,
  gau_noise_rad,
  imp_noise_rad,
  local_inc,
  local_dec,
  beam_del,
  layer_del,
  cutout,
};

constexpr int kCorruptionKindCount = 18;
constexpr int kSeverityLevels = 5;

const char* kind_name(CorruptionKind kind);
CorruptionKind kind_from_name(const std::string& name);  // throws unknown_kind
const std::array<CorruptionKind, kCorruptionKindCount>& all_kinds();
bool is_weather_kind(CorruptionKind kind);

// Which corruption to apply, how hard, and with which random stream.
// overrides replaces individual profile parameters by name for this spec
// only (a scalar override applies at every severity).
struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::gau_noise;
  int severity = 1;  // 1..5
  std::uint64_t seed = 0;
  std::map<std::string, double> overrides;
};

void validate_spec(const CorruptionSpec& spec);

// Severity -> concrete parameter tables, one named-parameter map per kind.
// Each parameter holds either 5 per-severity values or a single scalar that
// applies at every severity. Defaults cover all 18 kinds and every parameter
// is overridable from an INI profile file:
//
//   [gau_noise]
//   sigma = 0.02 0.04 0.06 0.08 0.10
//
// validate() enforces that every kind defines all of its parameters and that
// per-severity rows are monotone non-decreasing.
class SeverityProfile {
 public:
  static SeverityProfile defaults();

  // Defaults overlaid with the sections of an INI profile file.
  static SeverityProfile load(const std::string& path);

  // Overlays parsed INI text onto this profile.
  void merge_ini_text(const std::string& text);

  void set(CorruptionKind kind, const std::string& param, std::vector<double> values);

  // Value of a parameter at the given severity (1..5). Scalars ignore the
  // severity. Throws config errors for unknown parameters.
  double param(CorruptionKind kind, const std::string& param, int severity) const;

  bool has(CorruptionKind kind, const std::string& param) const;

  void validate() const;

  // Renders the profile as INI text (the same shape load() accepts).
  std::string render() const;

 private:
  // kind name -> parameter name -> 1 or 5 values
  std::map<std::string, std::map<std::string, std::vector<double>>> table_;
};

}  // namespace lcorrupt
