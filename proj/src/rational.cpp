#include "coxfano/rational.hpp"

#include <stdexcept>

namespace coxfano {

Rational::Rational(Int num, Int den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = checked::neg(num);
        den = checked::neg(den);
    }
    const Int g = checked::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::operator+(const Rational& o) const
{
    const Int g = checked::gcd(den_, o.den_);
    const Int l = checked::mul(den_ / g, o.den_);
    return {checked::add(checked::mul(num_, l / den_), checked::mul(o.num_, l / o.den_)), l};
}

Rational Rational::operator-(const Rational& o) const
{
    return *this + Rational(checked::neg(o.num_), o.den_);
}

Rational Rational::operator*(const Rational& o) const
{
    // cross-cancel first to keep intermediates small
    const Int g1 = checked::gcd(num_, o.den_);
    const Int g2 = checked::gcd(o.num_, den_);
    return {checked::mul(num_ / g1, o.num_ / g2), checked::mul(den_ / g2, o.den_ / g1)};
}

Rational Rational::operator/(const Rational& o) const
{
    if (o.num_ == 0) throw std::domain_error("division by zero rational");
    return *this * Rational(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const
{
    return checked::mul(num_, o.den_) <=> checked::mul(o.num_, den_);
}

std::string Rational::to_string() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_display() const
{
    return den_ == 1 ? std::to_string(num_) : to_string();
}

Rational Rational::parse(const std::string& text)
{
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(text));
        std::size_t used = 0;
        const Int num = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("numerator");
        const std::string den_text = text.substr(slash + 1);
        const Int den = std::stoll(den_text, &used);
        if (used != den_text.size()) throw std::invalid_argument("denominator");
        return {num, den};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed rational '" + text + "'");
    }
}

} // namespace coxfano
