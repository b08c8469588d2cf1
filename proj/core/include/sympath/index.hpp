#pragma once

#include <cstdint>
#include <optional>

#include "sympath/angle.hpp"
#include "sympath/blocks.hpp"
#include "sympath/config.hpp"
#include "sympath/fraction.hpp"

namespace sympath {

// Index data of one iterate gamma^m at the unit-circle point 1.
//   i        : Maslov-type index (lower convention: endpoint crossings at
//              t = 1 are excluded),
//   nu       : nullity dim ker(gamma(m) - I),
//   mu_minus : lower index (== i),
//   mu_plus  : upper index (== i + nu),
//   mean     : mean index per period, m * mean(gamma).
struct IndexRecord {
    std::int64_t m = 1;
    std::int64_t i = 0;
    std::int64_t nu = 0;
    std::int64_t mu_minus = 0;
    std::int64_t mu_plus = 0;
    double mean = 0.0;
};

// The omega-index i_omega of the path (multiplier applied), lower
// convention.  Computed per block from the generator's frequency modes with
// Krein signs: an interior crossing contributes the sign of the crossing
// form; an endpoint crossing contributes -1 exactly when the frequency sign
// and the Krein sign disagree; at omega == 1 the t = 0 endpoint adds
// n_plus(B) - n.  Exact rational angles use exact integer arithmetic.
std::int64_t maslov_index(const PathSpec& p, const Angle& omega, const Config& cfg);

// dim_C ker(gamma(end) - omega I) computed structurally from the generator
// spectrum (never materializes the end matrix, so huge iterates are fine).
std::int64_t nullity_at_angle(const PathSpec& p, const Angle& omega, const Config& cfg);

// Mean index per period: sum over positive generator frequencies beta of
// (Krein signature) * beta / pi, times the multiplier.  Exact rational
// value when every elliptic frequency is an exact rational multiple of pi.
double mean_index(const PathSpec& p, const Config& cfg);
std::optional<Fraction> mean_index_exact(const PathSpec& p, const Config& cfg);

// Full record for gamma^m (composed with any multiplier already in p).
IndexRecord index_at_iterate(const PathSpec& p, std::int64_t m, const Config& cfg);

} // namespace sympath
