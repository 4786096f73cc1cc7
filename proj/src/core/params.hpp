#pragma once

#include <string>

#include "core/severity_profile.hpp"

namespace lcorrupt::detail {

// Per-spec overrides win over the profile row for the spec's severity.
inline double resolve_param(const CorruptionSpec& spec, const SeverityProfile& profile,
                            const std::string& name) {
  auto it = spec.overrides.find(name);
  if (it != spec.overrides.end()) {
    return it->second;
  }
  return profile.param(spec.kind, name, spec.severity);
}

}  // namespace lcorrupt::detail
