#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympath/blocks.hpp"
#include "sympath/config.hpp"

namespace sympath {

// A common-index-jump tuple (N, m_1..m_q) over a collection of q paths.
// Each m_k is built from the scan variable x_k = N / (m_bar * mean_k) as
//   m_k = (floor(x_k) + chi_k) * m_bar,   chi_k in {0, 1},
// and the certificate stores the residuals |{x_k} - chi_k| (all < epsilon).
struct JumpCertificate {
    std::int64_t N = 0;
    std::vector<std::int64_t> m;
    std::vector<int> chi;
    double epsilon = 0.0;
    std::int64_t m_bar = 1;
    std::vector<double> residuals;
};

// Smallest iterate at which some exact rational eigenvalue angle of some
// end matrix in the collection returns to 1 (minimum over angles of the
// 2*pi order).  nullopt = infinity: no end matrix carries an exact angle in
// (0, 2*pi), so iteration never changes any nullity.  Numeric (undecided)
// angles never contribute.
std::optional<std::int64_t> m_check(const std::vector<PathSpec>& specs, const Config& cfg);

// Least positive integer whose product with theta/pi is an integer for
// every exact rational eigenvalue angle across the collection (the lcm of
// the reduced denominators); 1 when there are no such angles.
std::int64_t m_bar(const std::vector<PathSpec>& specs, const Config& cfg);

// Linear scan for jump tuples over plain real mean indices: accepts N when
// every fractional part f_k = {N / (m_bar * mean_k)} is either < epsilon
// (chi_k = 0) or > 1 - epsilon (chi_k = 1); emits certificates in
// increasing N until `want` are found or N = n_max.  A short result is not
// an error (the caller decides how to report it).
std::vector<JumpCertificate> find_jump_tuples(const std::vector<double>& mean_indices,
                                              std::int64_t m_bar_value, double epsilon,
                                              int want, std::int64_t n_max);

// Spec-aware search used by the verification commands.  On top of the
// residual scan it enforces, for every inexact (irrational) eigenvalue
// angle theta of spec k with S_minus(theta) > 0, the resonance-side window
//   chi_k = 0:  {m_k * theta / pi} > 1 - window,
//   chi_k = 1:  {m_k * theta / pi} < window,
// with window = min(cfg.delta, gap/2, 1/(2 K)) where gap is the smallest
// distance of {m * theta / (2*pi)} from an integer over 1 <= m <=
// protect_up_to and K is the largest number of windowed angles in one
// spec.  Together with the guard epsilon * m_bar * mean_k < 1/2 this makes
// the index-jump identities at iterates 2 m_k +/- m exact integer
// statements for m <= protect_up_to (the accepted N pin every carry in the
// floor arithmetic).  Paths whose mean index is an exact rational are
// accepted only at exact residual 0, which the guard already forces.
struct JumpSearchResult {
    std::vector<JumpCertificate> certs;
    std::int64_t m_bar = 1;
    std::optional<std::int64_t> m_check;
    double window = 0.0; // 0 when the collection has no windowed angles
    std::vector<std::string> warnings;
};
JumpSearchResult search_jump_tuples(const std::vector<PathSpec>& specs, const Config& cfg,
                                    int protect_up_to = 12);

// Sum of S_minus(e^{i theta}) over exact eigenvalue angles theta in
// (0, 2*pi) of the end matrix with both m_k * theta / pi and
// m * theta / (2*pi) integral.  Exact integer arithmetic; numeric angles
// never contribute.
std::int64_t resonant_split_sum(const PathSpec& spec, std::int64_t m_k, std::int64_t m,
                                const Config& cfg);

// Sum of S_minus(e^{i theta}) over all unit eigenvalue angles theta in
// (0, 2*pi) whose fractional part {m_k * theta / pi} lies strictly inside
// (0, delta).  Exact angles use integer arithmetic; numeric angles use
// floating point, with a warning when a fractional part comes within 1e-9
// of the interval boundary.
struct NearResonanceSum {
    std::int64_t value = 0;
    // ({m_k * theta / pi}, S_minus) per profile row in (0, 2*pi).
    std::vector<std::pair<double, std::int64_t>> fracs;
    std::vector<std::string> warnings;
};
NearResonanceSum near_resonance_split_sum(const PathSpec& spec, std::int64_t m_k,
                                          double delta, const Config& cfg);

// Sum of S_minus over all unit eigenvalue angles in (0, 2*pi).
std::int64_t total_split_sum(const PathSpec& spec, const Config& cfg);

} // namespace sympath
