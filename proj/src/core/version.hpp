#pragma once

namespace lcorrupt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lcorrupt
