#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace ccl {

// Shortest round-trip decimal form of a double (std::to_chars), so emitted
// files are byte-stable across runs and parse back to the identical bits.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t v) { return std::to_string(v); }

}  // namespace ccl
