#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "vigil/errors.hpp"

namespace vigil {

// Locale-free numeric formatting/parsing. All file output goes through these
// helpers so identical values always serialize to identical bytes. Doubles use
// the shortest representation that round-trips exactly.
inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_int(long long v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_uint(unsigned long long v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw FormatError("bad numeric field: '" + std::string(s) + "'");
    return v;
}

inline long long parse_int(std::string_view s) {
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw FormatError("bad integer field: '" + std::string(s) + "'");
    return v;
}

inline unsigned long long parse_uint(std::string_view s) {
    unsigned long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw FormatError("bad unsigned field: '" + std::string(s) + "'");
    return v;
}

}  // namespace vigil
