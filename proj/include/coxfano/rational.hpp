#pragma once

#include "coxfano/checked.hpp"

#include <compare>
#include <string>

namespace coxfano {

/// Exact rational p/q in lowest terms with q > 0.
class Rational {
public:
    Rational() = default;
    Rational(Int num) : num_(num) {} // NOLINT(google-explicit-constructor)
    Rational(Int num, Int den);

    Int num() const { return num_; }
    Int den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational&) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    /// "p/q", always with the denominator, e.g. "1/1".
    std::string to_string() const;
    /// "p" when integral, "p/q" otherwise.
    std::string to_display() const;
    static Rational parse(const std::string& text);

private:
    Int num_ = 0;
    Int den_ = 1;
};

} // namespace coxfano
