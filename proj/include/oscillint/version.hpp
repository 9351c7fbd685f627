#pragma once

namespace oscillint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace oscillint
