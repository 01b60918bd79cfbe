/// @file rational.hpp
/// @brief Exact rational arithmetic for the scaling-exponent algebra.
///
/// The critical-regime exponents ((2r-1)/(r-1), r/(r-1), r/(2r-1)) are
/// algebraic identities in the flow index r; they are tested exactly, so the
/// arithmetic must be exact when r is rational.
#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "porolub/error.hpp"

namespace porolub {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error(ErrorCategory::domain, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw Error(ErrorCategory::domain, "rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        // both denominators positive after normalize
        return a.num * b.den < b.num * a.den;
    }
};

/// Parse a decimal string ("2", "1.5", "3/2") into an exact rational.
Rational parse_rational(const std::string& s);

} // namespace porolub
