#include "sympath/splitting.hpp"

#include <cmath>
#include <numbers>

#include "sympath/errors.hpp"
#include "sympath/evaluate.hpp"
#include "sympath/index.hpp"
#include "sympath/spectrum.hpp"

namespace sympath {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The end angle of a rotation block after the multiplier: M * theta mod 2*pi.
Angle reduced_rotation_angle(const Angle& theta, std::int64_t M) {
    if (theta.is_exact()) {
        std::int64_t q = theta.pi_den();
        std::int64_t r = (M % (2 * q)) * theta.pi_num() % (2 * q);
        if (r < 0) r += 2 * q;
        return Angle::exact_pi(r, q);
    }
    return Angle::numeric(theta.frac_times_over_2pi(M) * kTwoPi);
}

// Closed-form profile of one block's end matrix.  Lists every angle that
// carries unit eigenvalues, including rows whose splitting numbers vanish.
std::vector<std::pair<Angle, SplitPair>> table_rows(const BlockSpec& b, std::int64_t M) {
    const Angle one = Angle::exact_pi(0, 1);
    if (const auto* z = std::get_if<ZeroForm>(&b)) {
        return {{one, {z->nu0, z->nu0}}};
    }
    if (std::get_if<Q0Block>(&b)) {
        return {{one, {1, 1}}};
    }
    if (const auto* qs = std::get_if<QSignBlock>(&b)) {
        if (qs->sign > 0) return {{one, {0, 0}}};
        return {{one, {1, 1}}};
    }
    if (const auto* rot = std::get_if<RotationBlock>(&b)) {
        Angle alpha = reduced_rotation_angle(rot->theta, M);
        if (alpha.is_zero()) return {{one, {1, 1}}};
        if (alpha.is_exact() && alpha.pi_num() == 1 && alpha.pi_den() == 1)
            return {{alpha, {1, 1}}};
        return {{alpha, {0, 1}}, {alpha.conjugate(), {1, 0}}};
    }
    if (std::get_if<HyperbolicBlock>(&b)) return {};
    throw PreconditionError("splitting table is defined only for the named block kinds");
}

SplitPair numeric_split_single(const PathSpec& single, const Angle& omega, const Config& cfg) {
    std::int64_t base = maslov_index(single, omega, cfg);
    double th0 = omega.radians();
    const double probes[] = {1e-2, 1e-3, 1e-4, 1e-5};
    SplitPair prev{0, 0};
    bool have_prev = false;
    for (double s : probes) {
        std::int64_t up = maslov_index(single, Angle::numeric(th0 + s), cfg);
        std::int64_t dn = maslov_index(single, Angle::numeric(th0 - s), cfg);
        SplitPair cur{up - base, dn - base};
        if (have_prev && cur == prev) {
            std::int64_t nu = nullity_at_angle(single, omega, cfg);
            if (cur.plus < 0 || cur.minus < 0 || cur.plus > nu || cur.minus > nu)
                throw NumericalFailure("splitting numbers violate 0 <= S <= nullity");
            return cur;
        }
        prev = cur;
        have_prev = true;
    }
    throw NumericalFailure("splitting probe ladder failed to stabilize");
}

} // namespace

SplitPair SplittingProfile::at(const Angle& omega, double tol) const {
    SplitPair total;
    for (const auto& [ang, sp] : rows)
        if (ang.approx_same(omega, tol)) total = total + sp;
    return total;
}

SplitPair splitting_numbers(const PathSpec& p, const Angle& omega, const Config& cfg,
                            SplitRoute route) {
    validate(p, cfg);
    SplitPair total;
    for (const auto& b : p.blocks) {
        PathSpec single{{b}, p.multiplier};
        bool has_table = !std::holds_alternative<GenericBlock>(b);
        bool use_table = route == SplitRoute::Table || (route == SplitRoute::Auto && has_table);
        if (use_table) {
            for (const auto& [ang, sp] : table_rows(b, p.multiplier))
                if (ang.approx_same(omega, cfg.tol_unit)) total = total + sp;
        } else {
            total = total + numeric_split_single(single, omega, cfg);
        }
    }
    return total;
}

SplittingProfile splitting_profile(const PathSpec& p, const Config& cfg, SplitRoute route) {
    validate(p, cfg);
    SplittingProfile prof;
    auto add_row = [&](const Angle& ang, const SplitPair& sp) {
        for (auto& [a, v] : prof.rows) {
            if (a.approx_same(ang, cfg.tol_unit)) {
                v = v + sp;
                return;
            }
        }
        prof.rows.emplace_back(ang, sp);
    };
    for (const auto& b : p.blocks) {
        bool has_table = !std::holds_alternative<GenericBlock>(b);
        bool use_table = route == SplitRoute::Table || (route == SplitRoute::Auto && has_table);
        if (use_table) {
            for (const auto& [ang, sp] : table_rows(b, p.multiplier)) add_row(ang, sp);
        } else {
            // Angles with unit eigenvalues read off the end matrix, values
            // from the probe route.
            PathSpec single{{b}, p.multiplier};
            Mat end = end_matrix(single, cfg);
            for (const auto& u : unit_spectrum(end, cfg))
                add_row(u.angle, numeric_split_single(single, u.angle, cfg));
        }
    }
    std::sort(prof.rows.begin(), prof.rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return prof;
}

std::int64_t bott_splitting(const SplittingProfile& profile, std::int64_t m) {
    if (m < 1) throw ValidationError("bott_splitting: m must be >= 1");
    std::int64_t sum = 0;
    for (const auto& [angle, sp] : profile.rows)
        if (angle.is_exact() && angle.times_is_multiple_of_2pi(m)) sum += sp.minus;
    return sum;
}

BetaMinusReport beta_minus_check(const PathSpec& p, const Config& cfg) {
    BetaMinusReport r;
    r.inv = invariants_of(p);
    const Angle one = Angle::exact_pi(0, 1);
    r.nu = nullity_at_angle(p, one, cfg);
    SplitPair tab = splitting_numbers(p, one, cfg, SplitRoute::Table);
    SplitPair num = splitting_numbers(p, one, cfg, SplitRoute::Numeric);
    r.s_minus_table = tab.minus;
    r.s_plus_table = tab.plus;
    r.s_minus_numeric = num.minus;
    r.s_plus_numeric = num.plus;
    r.pass = r.inv.beta_minus() == tab.minus && r.inv.beta_minus() == num.minus &&
             r.inv.beta_plus() == r.nu - tab.minus && r.inv.beta_plus() == r.nu - num.minus &&
             tab.plus == tab.minus && num.plus == num.minus &&
             r.nu == r.inv.nullity();
    return r;
}

} // namespace sympath
