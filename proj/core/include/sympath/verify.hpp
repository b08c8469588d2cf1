#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sympath/blocks.hpp"
#include "sympath/cijt.hpp"
#include "sympath/config.hpp"

namespace sympath {

// One verified equality or bound.  Integer identities use tolerance 0 and
// relation "=="; real-valued checks carry their tolerance; bound checks use
// relation "<=" (pass iff lhs <= rhs + tolerance).  A check that threw in
// the engine is recorded with engine_error = true and never passes.
struct Check {
    std::string name;    // stable machine name, parameters embedded
    std::string section; // "core" or "external-definition"
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    std::string relation = "==";
    bool pass = false;
    bool engine_error = false;
    std::string error;
};

struct VerificationReport {
    JumpCertificate cert; // zero-initialized when not tuple-based
    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::string tool_version;
    std::uint64_t seed = 0;

    int passed() const;
    int failed() const; // includes engine errors
    bool all_pass() const;
};

// Index-jump identities at the tuple (N, m_1..m_q):
//   for 1 <= m < m_check (capped at max(m_bar_range, 12) when larger or
//   infinite, with a note):
//     nullity(2 m_k - m) == nullity(1) == nullity(2 m_k + m)
//   for 1 <= m <= m_bar_range:
//     nullity(2 m_k +/- m) == nullity(m)
//     index(2 m_k + m) == 2 N + index(m)
//     index(2 m_k - m) == 2 N - index(m) - 2 (S_plus(1) + resonant_split_sum)
//   and, in the external-definition section (the total-splitting constant
//   and the near-resonance window are adopted definitions, not part of the
//   core contract):
//     index(2 m_k) == 2 N - (S_plus(1) + total_split_sum - 2 near_resonance)
// Minus-direction instances are only defined for m < 2 m_k; when a small
// certificate clips the range, the skipped instances are noted in the report.
VerificationReport verify_ecijt(const std::vector<PathSpec>& specs, const JumpCertificate& cert,
                                std::int64_t m_bar_range, const Config& cfg);

// Index-recurrence form of the same content, with d = 2 N and per-path
// period 2 m_k:
//   |mean(2 m_k) - d| < eta                      (real, tolerance eta)
//   d - n <= mu_minus(2 m_k) <= mu_plus(2 m_k) <= d + n   (n = half-dim)
//   mu_pm(2 m_k + l) == d + mu_pm(l)             (1 <= l <= l0, exact)
//   mu_plus(2 m_k - l) == d - mu_minus(l) + (beta_plus(l) - beta_minus(l))
// where beta_minus(l) = S_minus(1) of the l-th iterate and beta_plus(l) =
// nullity(l) - beta_minus(l).  Also checks the translation identities that
// tie the two formulations together:
//   beta_plus(m) - beta_minus(m) == nullity(2 m_k - m) - 2 (S_plus(1) + Q)
//   beta_plus(m) + beta_minus(m) == nullity(2 m_k - m)
//   beta_minus(m)                == S_minus(1) + Q
// with Q = resonant_split_sum(spec, m_k, m).
// Precondition: 2 m_bar mean_k epsilon < eta for every k (else refuses and
// directs the caller to a smaller epsilon).  Instances that would look at a
// nonpositive iterate (l >= 2 m_k) are skipped with a report note, since the
// identities are only defined below twice the jump iterate.
VerificationReport verify_ir(const std::vector<PathSpec>& specs, const JumpCertificate& cert,
                             std::int64_t l0, double eta, const Config& cfg);

// Enumerates every multiset of named degenerate blocks (identity planes
// with nu0 <= 2, two-chain nilpotent blocks d in {1,3,5}, single-chain
// blocks d in {1,2,3} of both signs) with total dimension <= dim_bound and
// checks beta_minus == S_minus(1) (table and probe routes) plus
// beta_plus + beta_minus == nullity on each.
VerificationReport verify_prop1_suite(int dim_bound, const Config& cfg);

// Seeded random collection of q paths for the verification commands.  Each
// path gets 1..3 blocks from the named kinds and at least one rotation
// block (so the mean index is positive).  Rotation angles are drawn from
// small-denominator exact rationals and, sparingly, a fixed irrational
// pool (at most one path holds irrational angles, at most two of them, so
// the windowed scan stays effective).  with_generic additionally allows
// conjugated planar blocks (exact-angle rotations/stretches written as full
// quadratic forms); intended for engine cross-agreement at small iterates,
// not for tuple searches.
std::vector<PathSpec> make_random_collection(std::uint64_t seed, int q, const Config& cfg,
                                             bool with_generic = false);

} // namespace sympath
