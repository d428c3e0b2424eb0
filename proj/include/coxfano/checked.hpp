#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coxfano {

using Int = std::int64_t;

/// Raised whenever a fixed-width intermediate would wrap around.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

namespace checked {

inline Int add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Int sub(Int a, Int b)
{
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

inline Int gcd(Int a, Int b) { return std::gcd(abs(a), abs(b)); }

inline Int lcm(Int a, Int b)
{
    if (a == 0 || b == 0) return 0;
    return mul(abs(a) / gcd(a, b), abs(b));
}

inline Int pow(Int base, unsigned exp)
{
    Int r = 1;
    for (unsigned i = 0; i < exp; ++i) r = mul(r, base);
    return r;
}

/// base^exp clamped to `cap` (base >= 1); used for search limits that only need to be "large".
inline Int pow_capped(Int base, unsigned exp, Int cap)
{
    Int r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > cap / base) return cap;
        r *= base;
    }
    return r < cap ? r : cap;
}

/// Non-negative residue of a modulo m (m > 0).
inline Int mod(Int a, Int m)
{
    Int r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace checked
} // namespace coxfano
