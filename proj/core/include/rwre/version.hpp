#pragma once

namespace rwre {

inline constexpr const char* kToolName = "rwre";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace rwre
