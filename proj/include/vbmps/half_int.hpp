#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vbmps {

// Exact half-integer arithmetic for spins, ranks and magnetic quantum
// numbers.  The value s is stored as the integer 2s, so s = 3/2 is
// HalfInt{3} and never suffers floating-point drift.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0) {}
    constexpr explicit HalfInt(long long twice) : twice_(twice) {}

    static constexpr HalfInt from_twice(long long twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(long long n) { return HalfInt(2 * n); }

    constexpr long long twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    double value() const { return 0.5 * static_cast<double>(twice_); }

    // Multiplicity 2s+1 of the spin-s irrep.  Negative s has none.
    long long multiplicity() const {
        if (twice_ < 0) throw std::domain_error("HalfInt::multiplicity: negative spin");
        return twice_ + 1;
    }

    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    long long twice_;
};

// (-1)^(a) for a half-integer a; defined only when a is actually an integer.
// This is the parity entering phases like (-1)^(s-m): s-m is always an
// integer when m runs over the weights of the spin-s irrep, and asking for
// the parity of a genuine half-integer is a bookkeeping bug upstream.
inline int parity_sign(HalfInt a) {
    if (!a.is_integer())
        throw std::domain_error("parity_sign: (-1)^a undefined for half-odd a = " + a.str());
    return (a.twice() / 2) % 2 == 0 ? 1 : -1;
}

// Parse "3/2", "-1/2", "1.5", "2" into an exact HalfInt.
inline HalfInt parse_half_int(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_half_int: empty string");
    auto bad = [&] { return std::invalid_argument("parse_half_int: cannot parse '" + text + "'"); };
    std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        std::size_t used = 0;
        long long num = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw bad();
        long long den = std::stoll(text.substr(slash + 1), &used);
        if (used != text.size() - slash - 1) throw bad();
        if (den == 2) return HalfInt::from_twice(num);
        if (den == 1) return HalfInt::from_int(num);
        throw std::invalid_argument("parse_half_int: denominator must be 1 or 2 in '" + text + "'");
    }
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw bad();
    double tw = 2.0 * v;
    if (std::abs(tw - std::llround(tw)) > 1e-9)
        throw std::invalid_argument("parse_half_int: '" + text + "' is not a half-integer");
    return HalfInt::from_twice(std::llround(tw));
}

} // namespace vbmps
