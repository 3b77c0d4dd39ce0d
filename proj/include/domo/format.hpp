#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace domo {

/// Shortest round-trip decimal, independent of the global locale.
inline std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

/// printf("%.12g")-style decimal, independent of the global locale.
inline std::string format_g12(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return std::string(buf, result.ptr);
}

} // namespace domo
