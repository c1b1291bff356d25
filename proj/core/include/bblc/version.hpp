#pragma once

namespace bblc {

inline constexpr const char* kToolName = "bblc";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace bblc
