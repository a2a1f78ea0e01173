#pragma once

#include <charconv>
#include <string>

namespace rsz {

/// Shortest round-trip decimal form; identical on every conforming platform.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace rsz
