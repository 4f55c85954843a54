#pragma once

namespace tenuniq {
inline constexpr const char* kToolName = "tenuniq";
inline constexpr const char* kToolVersion = "0.1.0";
}  // namespace tenuniq
