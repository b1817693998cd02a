#pragma once

namespace coagkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace coagkit
