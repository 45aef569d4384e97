#pragma once

namespace toricci {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kOutputSchemaVersion = 1;

}  // namespace toricci
