#pragma once

namespace mirrad {

inline constexpr const char* kToolName = "mirrad";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace mirrad
