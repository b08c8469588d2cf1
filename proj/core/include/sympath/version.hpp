#pragma once

namespace sympath {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace sympath
