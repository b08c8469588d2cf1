#pragma once

#include <cstdint>

namespace sympath {

// Numerical tolerances and search defaults.  Every knob can be overridden
// from the environment with a SYMPATH_ prefix (upper-cased field name),
// e.g. SYMPATH_TOL_SYM=1e-12.
struct Config {
    // Max allowed |M^T J M - J| (max-abs) for a matrix accepted as symplectic.
    double tol_sym = 1e-10;
    // Distance from |lambda| to 1 below which an eigenvalue counts as
    // lying on the unit circle.
    double tol_unit = 1e-8;
    // Residual below which a numeric angle is snapped to a rational
    // multiple of pi found by continued fractions.
    double tol_rat = 1e-8;
    // Relative singular-value cutoff for numerical rank / nullity.
    double tol_rank = 1e-9;
    // Largest denominator tried when detecting rational angle/pi.
    int q_max = 64;
    // Default residual tolerance for the jump-tuple scan.
    double epsilon = 1e-3;
    // Default scan ceiling for jump-tuple certificates.
    std::int64_t n_max = 10000000;
    // Default number of certificates collected per scan.
    int want = 3;
    // Default half-width of the angular window used by the scan for
    // irrational rotation angles.
    double delta = 0.1;
    // If nonzero, overrides the iterate bound used by index-recurrence
    // range checks.
    std::int64_t m_bar_override = 0;

    // Reads SYMPATH_* environment overrides on top of the defaults.
    static Config from_env();
};

} // namespace sympath
