#include "sympath/cijt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sympath/errors.hpp"
#include "sympath/fraction.hpp"
#include "sympath/index.hpp"
#include "sympath/splitting.hpp"

namespace sympath {

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
// Iterates handed to the index engine stay below its exact-arithmetic cap
// (1e12) with room for the 2*m_k +/- m offsets used by the verifier.
constexpr std::int64_t kMaxJumpIterate = 400'000'000'000LL;

std::vector<SplittingProfile> profiles_of(const std::vector<PathSpec>& specs, const Config& cfg) {
    std::vector<SplittingProfile> out;
    out.reserve(specs.size());
    for (const PathSpec& s : specs) out.push_back(splitting_profile(s, cfg));
    return out;
}

long double frac1(long double x) {
    long double f = x - std::floor(x);
    if (f < 0.0L) f += 1.0L;
    if (f >= 1.0L) f -= 1.0L;
    return f;
}

} // namespace

std::optional<std::int64_t> m_check(const std::vector<PathSpec>& specs, const Config& cfg) {
    std::optional<std::int64_t> best;
    for (const SplittingProfile& prof : profiles_of(specs, cfg)) {
        for (const auto& [angle, sp] : prof.rows) {
            (void)sp;
            if (!angle.is_exact() || angle.is_zero()) continue;
            std::optional<std::int64_t> ord = angle.order_2pi();
            if (ord && (!best || *ord < *best)) best = *ord;
        }
    }
    return best;
}

std::int64_t m_bar(const std::vector<PathSpec>& specs, const Config& cfg) {
    std::int64_t result = 1;
    for (const SplittingProfile& prof : profiles_of(specs, cfg)) {
        for (const auto& [angle, sp] : prof.rows) {
            (void)sp;
            if (!angle.is_exact() || angle.is_zero()) continue;
            result = lcm_checked(result, angle.pi_den());
            if (result > 1'000'000'000LL)
                throw PreconditionError("m_bar: common rational-angle period exceeds 1e9; "
                                        "the tuple scan cannot cover such a collection");
        }
    }
    return result;
}

std::vector<JumpCertificate> find_jump_tuples(const std::vector<double>& mean_indices,
                                              std::int64_t m_bar_value, double epsilon,
                                              int want, std::int64_t n_max) {
    if (mean_indices.empty()) throw ValidationError("find_jump_tuples: empty mean-index list");
    for (double v : mean_indices)
        if (!(v > 0.0))
            throw PreconditionError("find_jump_tuples: every mean index must be positive");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw PreconditionError("find_jump_tuples: epsilon must lie in (0, 1/2)");
    if (m_bar_value < 1) throw ValidationError("find_jump_tuples: m_bar must be >= 1");
    if (want < 1) throw ValidationError("find_jump_tuples: want must be >= 1");
    if (n_max < 1) throw ValidationError("find_jump_tuples: n_max must be >= 1");

    const std::size_t q = mean_indices.size();
    std::vector<long double> scale(q);
    for (std::size_t k = 0; k < q; ++k)
        scale[k] = static_cast<long double>(m_bar_value) * static_cast<long double>(mean_indices[k]);

    std::vector<JumpCertificate> out;
    for (std::int64_t N = 1; N <= n_max && static_cast<int>(out.size()) < want; ++N) {
        JumpCertificate cert;
        bool ok = true;
        for (std::size_t k = 0; k < q; ++k) {
            long double x = static_cast<long double>(N) / scale[k];
            long double f = frac1(x);
            int chi;
            if (f < epsilon) chi = 0;
            else if (f > 1.0L - epsilon) chi = 1;
            else { ok = false; break; }
            std::int64_t mk = (static_cast<std::int64_t>(std::floor(x)) + chi) * m_bar_value;
            cert.m.push_back(mk);
            cert.chi.push_back(chi);
            cert.residuals.push_back(static_cast<double>(chi == 0 ? f : 1.0L - f));
        }
        if (!ok) continue;
        cert.N = N;
        cert.epsilon = epsilon;
        cert.m_bar = m_bar_value;
        out.push_back(std::move(cert));
    }
    return out;
}

JumpSearchResult search_jump_tuples(const std::vector<PathSpec>& specs, const Config& cfg,
                                    int protect_up_to) {
    if (specs.empty()) throw ValidationError("search_jump_tuples: empty collection");
    if (protect_up_to < 1) throw ValidationError("search_jump_tuples: protect_up_to must be >= 1");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5))
        throw PreconditionError("search_jump_tuples: epsilon must lie in (0, 1/2)");
    for (const PathSpec& s : specs) validate(s, cfg);

    JumpSearchResult res;
    res.m_bar = cfg.m_bar_override > 0 ? cfg.m_bar_override : m_bar(specs, cfg);
    res.m_check = m_check(specs, cfg);

    const std::size_t q = specs.size();
    const std::int64_t M = res.m_bar;

    // Per-spec scan data.
    std::vector<double> mean(q);
    std::vector<std::int64_t> exact_div(q, 0); // > 0: mean is rational and M*mean integral
    std::vector<long double> scale(q);
    struct WindowAngle {
        long double theta_over_pi;
        std::int64_t weight; // S_minus at this row
    };
    std::vector<std::vector<WindowAngle>> windows(q);

    std::int64_t k_max = 0;
    long double gap = 1.0L;
    for (std::size_t k = 0; k < q; ++k) {
        mean[k] = mean_index(specs[k], cfg);
        if (!(mean[k] > 0.0)) {
            std::ostringstream os;
            os << "search_jump_tuples: path " << (k + 1) << " has nonpositive mean index "
               << mean[k] << "; the tuple scan requires every mean index positive";
            throw PreconditionError(os.str());
        }
        if (!(cfg.epsilon * static_cast<double>(M) * mean[k] < 0.5)) {
            std::ostringstream os;
            os << "search_jump_tuples: epsilon * m_bar * mean = "
               << cfg.epsilon * static_cast<double>(M) * mean[k] << " for path " << (k + 1)
               << " is not below 1/2; rerun with a smaller epsilon";
            throw PreconditionError(os.str());
        }
        scale[k] = static_cast<long double>(M) * static_cast<long double>(mean[k]);

        if (std::optional<Fraction> fr = mean_index_exact(specs[k], cfg)) {
            Fraction d = *fr * Fraction(M);
            if (d.is_integer()) exact_div[k] = d.num;
            else
                res.warnings.push_back("path " + std::to_string(k + 1) +
                                       ": rational mean index not resolved by m_bar (override in "
                                       "effect?); falling back to floating-point residuals");
        }

        SplittingProfile prof = splitting_profile(specs[k], cfg);
        std::int64_t K = 0;
        for (const auto& [angle, sp] : prof.rows) {
            if (angle.is_exact() || sp.minus <= 0) continue;
            // A plane whose conjugate row also carries S_minus > 0 pins the
            // angle to both resonance sides at once; no N can satisfy that.
            for (const auto& [other, osp] : prof.rows)
                if (!other.is_exact() && osp.minus > 0 &&
                    other.approx_same(angle.conjugate(), cfg.tol_unit))
                    res.warnings.push_back("path " + std::to_string(k + 1) +
                                           ": conflicting resonance sides at angle " + angle.str() +
                                           "; the windowed scan may find nothing");
            long double top = static_cast<long double>(angle.radians()) / kPiL;
            windows[k].push_back({top, sp.minus});
            K += sp.minus;
            for (int mm = 1; mm <= protect_up_to; ++mm) {
                long double f = frac1(static_cast<long double>(mm) * top / 2.0L);
                gap = std::min(gap, std::min(f, 1.0L - f));
            }
        }
        k_max = std::max(k_max, K);
    }

    bool windowed = false;
    for (const auto& w : windows) windowed = windowed || !w.empty();
    if (windowed) {
        long double w = std::min({static_cast<long double>(cfg.delta), gap / 2.0L,
                                  0.5L / static_cast<long double>(k_max)});
        if (w < 1e-4L)
            throw PreconditionError(
                "search_jump_tuples: an irrational angle sits within 2e-4 of a low-order "
                "resonance; the windowed scan cannot separate it (gap = " +
                std::to_string(static_cast<double>(gap)) + ")");
        res.window = static_cast<double>(w);
    }
    const long double w = static_cast<long double>(res.window);

    for (std::int64_t N = 1;
         N <= cfg.n_max && static_cast<int>(res.certs.size()) < cfg.want; ++N) {
        JumpCertificate cert;
        bool ok = true;
        for (std::size_t k = 0; k < q && ok; ++k) {
            int chi = 0;
            std::int64_t mk = 0;
            double residual = 0.0;
            if (exact_div[k] > 0) {
                // Rational mean: the guard above leaves residual 0 as the
                // only value below epsilon, so accept exactly at multiples.
                if (N % exact_div[k] != 0) { ok = false; break; }
                mk = (N / exact_div[k]) * M;
            } else {
                long double x = static_cast<long double>(N) / scale[k];
                long double f = frac1(x);
                if (f < cfg.epsilon) chi = 0;
                else if (f > 1.0L - cfg.epsilon) chi = 1;
                else { ok = false; break; }
                residual = static_cast<double>(chi == 0 ? f : 1.0L - f);
                mk = (static_cast<std::int64_t>(std::floor(x)) + chi) * M;
            }
            if (mk > kMaxJumpIterate)
                throw PreconditionError("search_jump_tuples: jump iterate exceeds the exact "
                                        "index-arithmetic bound; lower n_max");
            for (const WindowAngle& wa : windows[k]) {
                long double u = frac1(static_cast<long double>(mk) * wa.theta_over_pi);
                if (chi == 0 ? !(u > 1.0L - w) : !(u < w)) { ok = false; break; }
            }
            if (!ok) break;
            cert.m.push_back(mk);
            cert.chi.push_back(chi);
            cert.residuals.push_back(residual);
        }
        if (!ok) continue;
        cert.N = N;
        cert.epsilon = cfg.epsilon;
        cert.m_bar = M;
        res.certs.push_back(std::move(cert));
    }

    if (static_cast<int>(res.certs.size()) < cfg.want)
        res.warnings.push_back("found only " + std::to_string(res.certs.size()) + " of " +
                               std::to_string(cfg.want) + " certificates up to N = " +
                               std::to_string(cfg.n_max));
    return res;
}

std::int64_t resonant_split_sum(const PathSpec& spec, std::int64_t m_k, std::int64_t m,
                                const Config& cfg) {
    if (m_k < 1 || m < 1) throw ValidationError("resonant_split_sum: iterates must be >= 1");
    std::int64_t sum = 0;
    for (const auto& [angle, sp] : splitting_profile(spec, cfg).rows) {
        if (!angle.is_exact() || angle.is_zero()) continue;
        if (angle.times_is_multiple_of_pi(m_k) && angle.times_is_multiple_of_2pi(m))
            sum += sp.minus;
    }
    return sum;
}

NearResonanceSum near_resonance_split_sum(const PathSpec& spec, std::int64_t m_k, double delta,
                                          const Config& cfg) {
    if (m_k < 1) throw ValidationError("near_resonance_split_sum: iterate must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw ValidationError("near_resonance_split_sum: delta must lie in (0, 1)");
    NearResonanceSum out;
    for (const auto& [angle, sp] : splitting_profile(spec, cfg).rows) {
        if (angle.is_zero()) continue;
        double f = angle.frac_times_over_pi(m_k);
        out.fracs.emplace_back(f, sp.minus);
        if (!angle.is_exact()) {
            double edge = std::min({f, std::abs(f - delta), 1.0 - f});
            if (edge < 1e-9)
                out.warnings.push_back("fractional part " + std::to_string(f) + " at angle " +
                                       angle.str() + " is within 1e-9 of the window boundary");
        }
        if (f > 0.0 && f < delta) out.value += sp.minus;
    }
    return out;
}

std::int64_t total_split_sum(const PathSpec& spec, const Config& cfg) {
    std::int64_t sum = 0;
    for (const auto& [angle, sp] : splitting_profile(spec, cfg).rows)
        if (!angle.is_zero()) sum += sp.minus;
    return sum;
}

} // namespace sympath
