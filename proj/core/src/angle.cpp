#include "sympath/angle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sympath/errors.hpp"

namespace sympath {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double positive_fmod(double x, double m) {
    double r = std::fmod(x, m);
    if (r < 0) r += m;
    // fmod can return exactly m after the correction when x is a tiny
    // negative number; keep the result in [0, m).
    if (r >= m) r -= m;
    return r;
}

// Best rational approximation p/q to x (x >= 0) with q <= q_max, via the
// continued-fraction convergents of x.
void best_rational(double x, int q_max, std::int64_t& p, std::int64_t& q, double& residual) {
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double y = x;
    for (int it = 0; it < 64; ++it) {
        double fa = std::floor(y);
        if (fa > 9e17) break;
        std::int64_t a = static_cast<std::int64_t>(fa);
        std::int64_t p2 = a * p1 + p0;
        std::int64_t q2 = a * q1 + q0;
        if (q2 > q_max) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = y - fa;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
    }
    p = p1;
    q = q1 == 0 ? 1 : q1;
    residual = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
}

} // namespace

Angle Angle::exact_pi(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw ValidationError("Angle::exact_pi: denominator must be positive");
    if (num < 0 || num >= 2 * den)
        throw ValidationError("Angle::exact_pi: angle must satisfy 0 <= num/den < 2 (got " +
                              std::to_string(num) + "/" + std::to_string(den) + ")");
    Angle a;
    a.exact_ = true;
    std::int64_t g = std::gcd(num, den);
    a.p_ = num / g;
    a.q_ = den / g;
    a.det_ = {a.p_, a.q_, 0.0, true};
    return a;
}

Angle Angle::from_radians(double theta, const Config& cfg) {
    if (!std::isfinite(theta)) throw ValidationError("Angle::from_radians: non-finite angle");
    double t = positive_fmod(theta, kTwoPi);
    std::int64_t p, q;
    double residual;
    best_rational(t / kPi, cfg.q_max, p, q, residual);
    if (residual < cfg.tol_rat && p >= 0 && p < 2 * q) {
        Angle a = exact_pi(p, q);
        a.det_.residual = residual;
        return a;
    }
    Angle a;
    a.exact_ = false;
    a.value_ = t;
    a.det_ = {p, q, residual, false};
    return a;
}

Angle Angle::numeric(double theta) {
    if (!std::isfinite(theta)) throw ValidationError("Angle::numeric: non-finite angle");
    Angle a;
    a.exact_ = false;
    a.value_ = positive_fmod(theta, kTwoPi);
    a.det_ = {0, 1, 1.0, false};
    return a;
}

double Angle::radians() const {
    if (!exact_) return value_;
    return static_cast<double>(p_) * kPi / static_cast<double>(q_);
}

Angle Angle::conjugate() const {
    if (exact_) {
        if (p_ == 0) return *this;
        return exact_pi(2 * q_ - p_, q_);
    }
    Angle a = *this;
    a.value_ = value_ == 0.0 ? 0.0 : kTwoPi - value_;
    return a;
}

bool Angle::times_is_multiple_of_2pi(std::int64_t m) const {
    if (!exact_) return m == 0;
    return (m * p_) % (2 * q_) == 0;
}

bool Angle::times_is_multiple_of_pi(std::int64_t m) const {
    if (!exact_) return m == 0;
    return (m * p_) % q_ == 0;
}

double Angle::frac_times_over_2pi(std::int64_t m) const {
    if (exact_) {
        std::int64_t r = (m * p_) % (2 * q_);
        if (r < 0) r += 2 * q_;
        return static_cast<double>(r) / static_cast<double>(2 * q_);
    }
    double x = static_cast<double>(m) * value_ / kTwoPi;
    return x - std::floor(x);
}

double Angle::frac_times_over_pi(std::int64_t m) const {
    if (exact_) {
        std::int64_t r = (m * p_) % q_;
        if (r < 0) r += q_;
        return static_cast<double>(r) / static_cast<double>(q_);
    }
    double x = static_cast<double>(m) * value_ / kPi;
    return x - std::floor(x);
}

std::optional<std::int64_t> Angle::order_2pi() const {
    if (!exact_) return std::nullopt;
    if (p_ == 0) return 1;
    return 2 * q_ / std::gcd(p_, 2 * q_);
}

bool Angle::approx_same(const Angle& other, double tol) const {
    if (exact_ && other.exact_) return p_ == other.p_ && q_ == other.q_;
    double d = std::abs(radians() - other.radians());
    return d < tol || std::abs(d - kTwoPi) < tol;
}

std::string Angle::str() const {
    std::ostringstream os;
    if (exact_) {
        if (p_ == 0) return "0";
        os << p_;
        if (q_ != 1) os << "/" << q_;
        os << "*pi";
    } else {
        os << value_ << " rad";
    }
    return os.str();
}

} // namespace sympath
