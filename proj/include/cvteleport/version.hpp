#pragma once

namespace cvt {

inline constexpr const char* kProjectName = "cvteleport";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace cvt
