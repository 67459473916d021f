#pragma once

namespace coclab {

inline constexpr const char* kToolName = "cocycle-lab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace coclab
