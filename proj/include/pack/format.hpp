#ifndef PACK_FORMAT_HPP
#define PACK_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>

#include "pack/common.hpp"

namespace pack {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
    if (text == "nan") {
        return std::nan("");
    }
    if (text == "inf") {
        return HUGE_VAL;
    }
    if (text == "-inf") {
        return -HUGE_VAL;
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw InvalidArgument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

template <typename Int>
Int parse_int(std::string_view text) {
    Int v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw InvalidArgument("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

} // namespace pack

#endif // PACK_FORMAT_HPP
