#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace arbcolor::detail {

/// Largest t with base^t <= value. Requires base >= 2 and value >= 1.
inline std::uint32_t floor_log(std::uint64_t base, std::uint64_t value) {
    if (base < 2 || value < 1) {
        throw std::invalid_argument("floor_log: need base >= 2 and value >= 1");
    }
    std::uint32_t t = 0;
    std::uint64_t power = 1;
    while (power <= value / base) {
        power *= base;
        ++t;
    }
    return t;
}

/// Smallest t with 2^t >= value (0 for value <= 1).
inline std::uint32_t ceil_log2(std::uint64_t value) {
    std::uint32_t t = 0;
    while (t < 64 && (std::uint64_t{1} << t) < value) {
        ++t;
    }
    return t;
}

/// base^exp, saturating at uint64 max.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t result = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result *= base;
    }
    return result;
}

inline bool is_prime(std::uint64_t value) {
    if (value < 2) {
        return false;
    }
    if (value % 2 == 0) {
        return value == 2;
    }
    for (std::uint64_t d = 3; d * d <= value; d += 2) {
        if (value % d == 0) {
            return false;
        }
    }
    return true;
}

/// Smallest prime strictly greater than value.
inline std::uint64_t next_prime_above(std::uint64_t value) {
    std::uint64_t candidate = value + 1;
    while (!is_prime(candidate)) {
        ++candidate;
    }
    return candidate;
}

/// Iterated base-2 logarithm: number of times log2 must be applied to reach <= 1.
inline std::uint32_t log_star(double value) {
    std::uint32_t count = 0;
    while (value > 1.0) {
        value = std::log2(value);
        ++count;
    }
    return count;
}

inline double log_base(double base, double value) { return std::log(value) / std::log(base); }

} // namespace arbcolor::detail
