#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sympath {

// Exact rational arithmetic on int64 numerator/denominator.  Used wherever
// a quantity is known to be rational (mean indices of rational-angle
// collections, resonance bookkeeping) so that residual tests are exact.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t n) : num(n), den(1) {}
    Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::domain_error("Fraction: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    Fraction operator+(const Fraction& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Fraction operator-(const Fraction& o) const { return {num * o.den - o.num * den, den * o.den}; }
    Fraction operator*(const Fraction& o) const { return {num * o.num, den * o.den}; }
    Fraction operator/(const Fraction& o) const {
        if (o.num == 0) throw std::domain_error("Fraction: division by zero");
        return {num * o.den, den * o.num};
    }
    Fraction operator-() const { return {-num, den}; }

    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Fraction& o) const { return !(*this == o); }
    bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Fraction& o) const { return num * o.den <= o.num * den; }
    bool operator>(const Fraction& o) const { return o < *this; }
    bool operator>=(const Fraction& o) const { return o <= *this; }

    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // floor(num/den) with correct behavior for negative values.
    std::int64_t floor() const {
        std::int64_t q = num / den, r = num % den;
        return (r != 0 && num < 0) ? q - 1 : q;
    }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    return (a / g) * b;
}

} // namespace sympath
