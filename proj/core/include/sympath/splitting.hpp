#pragma once

#include <cstdint>
#include <vector>

#include "sympath/angle.hpp"
#include "sympath/blocks.hpp"
#include "sympath/config.hpp"

namespace sympath {

// Splitting numbers (S_plus, S_minus) of the end matrix at a unit-circle
// point omega: the jumps of the omega-index under small positive/negative
// rotation of omega.
struct SplitPair {
    std::int64_t plus = 0;
    std::int64_t minus = 0;
    SplitPair operator+(const SplitPair& o) const { return {plus + o.plus, minus + o.minus}; }
    bool operator==(const SplitPair& o) const = default;
};

enum class SplitRoute {
    Table,   // per-block closed-form values (named kinds only)
    Numeric, // probe-angle index differences, block-agnostic
    Auto,    // table where available, numeric for generic blocks
};

// S_{plus,minus} of gamma(end) at omega.  The two routes are independent:
// Table reads per-kind closed forms after reducing each block's end angle;
// Numeric stabilizes i_{omega e^{+/- i s}} - i_omega over a shrinking probe
// ladder.  Table on a generic block throws PreconditionError.
SplitPair splitting_numbers(const PathSpec& p, const Angle& omega, const Config& cfg,
                            SplitRoute route = SplitRoute::Auto);

// All angles theta in [0, 2*pi) carrying unit eigenvalues of the end
// matrix, with the splitting numbers there.  Rows with equal angles are
// merged additively.
struct SplittingProfile {
    std::vector<std::pair<Angle, SplitPair>> rows;
    SplitPair at(const Angle& omega, double tol) const;
};
SplittingProfile splitting_profile(const PathSpec& p, const Config& cfg,
                                   SplitRoute route = SplitRoute::Auto);

// Sum of S_minus over profile rows whose angle theta satisfies
// m * theta in 2*pi*Z (exact angles only; numeric angles never resonate).
// Equals S_minus(1) of the m-th iterate's end matrix.
std::int64_t bott_splitting(const SplittingProfile& profile, std::int64_t m);

// For a totally degenerate path written in named degenerate blocks:
// checks beta_minus == S_minus(1) and beta_plus == nu - S_minus(1) with the
// splitting numbers taken from both routes.
struct BetaMinusReport {
    AGInvariants inv;
    std::int64_t nu = 0;
    std::int64_t s_minus_table = 0, s_plus_table = 0;
    std::int64_t s_minus_numeric = 0, s_plus_numeric = 0;
    bool pass = false;
};
BetaMinusReport beta_minus_check(const PathSpec& p, const Config& cfg);

} // namespace sympath
