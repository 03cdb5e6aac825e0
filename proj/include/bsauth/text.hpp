#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace bsauth {

/// 17 significant digits, '.' as decimal separator regardless of locale.
inline std::string format_g17(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Fixed-point rendering with `decimals` digits after the point.
inline std::string format_fixed(double v, int decimals)
{
    char buf[128];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

}  // namespace bsauth
