#pragma once

namespace ccl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ccl
