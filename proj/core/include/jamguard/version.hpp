#pragma once

namespace jamguard {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jamguard
