#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sympath/config.hpp"

namespace sympath {

// Result of trying to recognize theta/pi as a small rational p/q.
struct RationalDetection {
    std::int64_t p = 0;
    std::int64_t q = 1;
    double residual = 0.0; // |theta/pi - p/q|
    bool decided = false;  // true when residual < tol_rat with q <= q_max
};

// An angle in [0, 2*pi), stored either exactly as p*pi/q (reduced, integer
// arithmetic throughout) or as a double that failed rational detection and
// is treated as an irrational multiple of pi.
class Angle {
public:
    // theta = num*pi/den; requires 0 <= num/den < 2 after reduction.
    static Angle exact_pi(std::int64_t num, std::int64_t den);
    // Reduces theta into [0, 2*pi) and snaps to an exact representation when
    // continued fractions find p/q with q <= cfg.q_max within cfg.tol_rat.
    static Angle from_radians(double theta, const Config& cfg);
    // Reduces theta into [0, 2*pi) without rational detection.  Probe angles
    // must stay inexact even when they pass near a rational multiple of pi.
    static Angle numeric(double theta);

    bool is_exact() const { return exact_; }
    std::int64_t pi_num() const { return p_; } // valid only when is_exact()
    std::int64_t pi_den() const { return q_; }
    double radians() const;
    bool is_zero() const { return exact_ ? p_ == 0 : value_ == 0.0; }

    // The reflected angle 2*pi - theta (mod 2*pi); 0 maps to 0.
    Angle conjugate() const;

    // Exact angles only: does m*theta land on a multiple of 2*pi (resp. pi)?
    // Irrational multiples of pi never do (for m != 0).
    bool times_is_multiple_of_2pi(std::int64_t m) const;
    bool times_is_multiple_of_pi(std::int64_t m) const;

    // Fractional part of m*theta/(2*pi), in [0,1).  Exact when is_exact().
    double frac_times_over_2pi(std::int64_t m) const;
    // Fractional part of m*theta/pi, in [0,1).
    double frac_times_over_pi(std::int64_t m) const;

    // Smallest m >= 1 with m*theta a multiple of 2*pi; nullopt if none.
    std::optional<std::int64_t> order_2pi() const;

    const RationalDetection& detection() const { return det_; }

    // Value-equality at tolerance tol (radians), used to merge profile rows.
    bool approx_same(const Angle& other, double tol) const;
    bool operator<(const Angle& other) const { return radians() < other.radians(); }

    std::string str() const;

private:
    Angle() = default;
    bool exact_ = true;
    std::int64_t p_ = 0, q_ = 1; // theta = p*pi/q, reduced, 0 <= p/q < 2
    double value_ = 0.0;         // radians; authoritative when !exact_
    RationalDetection det_;
};

} // namespace sympath
