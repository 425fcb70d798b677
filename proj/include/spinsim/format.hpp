#pragma once

#include <charconv>
#include <string>

namespace spinsim {

// Shortest decimal representation that round-trips the double exactly.
// Pinned as the numeric format for CSV output and circuit dumps.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace spinsim
