#pragma once

namespace qtpm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qtpm
