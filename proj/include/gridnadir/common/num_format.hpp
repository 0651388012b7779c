#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>

#include "gridnadir/common/error.hpp"

namespace gridnadir {

/// Shortest round-trip decimal form of a double. Used for every float that
/// lands in a file so reruns are byte-identical and parse-back is exact.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError("not a number: '" + std::string(s) + "'");
    return v;
}

/// Parses the leading number of a string (leading spaces allowed).
inline double parse_double_prefix(std::string_view s) {
    std::size_t start = 0;
    while (start < s.size() && s[start] == ' ') ++start;
    double v = 0.0;
    auto res = std::from_chars(s.data() + start, s.data() + s.size(), v);
    if (res.ec != std::errc()) throw UsageError("no number at '" + std::string(s) + "'");
    return v;
}

inline long parse_long(std::string_view s) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError("not an integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace gridnadir
