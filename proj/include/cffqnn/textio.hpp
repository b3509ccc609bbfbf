#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>

namespace cffqnn {

/// Formats a double with 17 significant digits, enough to round-trip exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& token) {
    double v = 0.0;
    const auto* begin = token.data();
    const auto* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("not a number: '" + token + "'");
    }
    return v;
}

/// FNV-1a over raw bytes; used to fingerprint fitted transforms so that a
/// parameter file can be checked against the prepared data it was trained on.
inline std::uint64_t fnv1a(std::span<const std::byte> bytes,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (std::byte b : bytes) {
        h ^= static_cast<std::uint64_t>(b);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a_doubles(std::span<const double> values,
                                   std::uint64_t h = 0xcbf29ce484222325ULL) {
    return fnv1a(std::as_bytes(values), h);
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace cffqnn
