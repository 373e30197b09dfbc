#pragma once

namespace cyclekit {

inline constexpr const char* version = "1.0.0";

}  // namespace cyclekit
