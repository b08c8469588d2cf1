#include "sympath/index.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "sympath/errors.hpp"

namespace sympath {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest total iterate multiplier the exact integer bookkeeping supports
// (keeps every intermediate Fraction numerator well inside int64).
constexpr std::int64_t kMaxMultiplier = 1000000000000LL; // 1e12

// One nonzero frequency i*beta of the generator J*B, with the Krein
// signature (kpos, kneg) of its eigenspace.  geo is the eigenspace
// dimension, which feeds nullity counts even when the Krein data could not
// be certified (krein_ok == false).
struct Mode {
    double beta = 0.0;
    bool exact = false;       // beta = p*pi/q exactly (p signed)
    std::int64_t p = 0, q = 1;
    int kpos = 0, kneg = 0;
    int geo = 0;
    bool krein_ok = true;
};

struct BlockAnalysis {
    std::vector<Mode> modes; // nonzero imaginary frequencies, both signs listed
    int n_plus = 0;          // positive eigenvalue count of B
    int n_zero = 0;          // dim ker B (geometric nullity of the zero frequency)
    int n = 0;               // half dimension
    bool clean = true;       // false => indices need the perturbation ladder
};

int numerical_rank(const Mat& A, double rel_tol) {
    Eigen::JacobiSVD<Mat> svd(A);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) < 1e-300) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

// Algebraic multiplicity of the eigenvalue 0 of A, via the stabilized rank
// of successive powers: rank(A^k) plateaus at codim of the generalized
// kernel once k reaches the longest zero Jordan chain.  Far more robust
// against the eigenvalue splatter of nilpotent parts than thresholding
// eigenvalue magnitudes.
int zero_alg_mult(const Mat& A) {
    int dim = static_cast<int>(A.rows());
    Mat P = A;
    int prev = numerical_rank(P, 1e-12);
    if (prev == dim) return 0;
    for (int k = 2; k <= dim + 1; ++k) {
        P = P * A;
        double norm = P.cwiseAbs().maxCoeff();
        if (norm < 1e-300) return dim; // nilpotent: everything is generalized kernel
        P /= norm;
        int r = numerical_rank(P, 1e-12);
        if (r == prev) return dim - r;
        prev = r;
    }
    return dim - prev;
}

BlockAnalysis analyze_generic(const Mat& Q, const Config& cfg) {
    const int n2 = static_cast<int>(Q.rows());
    const int n = n2 / 2;
    BlockAnalysis an;
    an.n = n;

    Eigen::SelfAdjointEigenSolver<Mat> sa(Q);
    if (sa.info() != Eigen::Success)
        throw NumericalFailure("symmetric eigendecomposition of the quadratic form failed");
    double qscale = sa.eigenvalues().cwiseAbs().maxCoeff();
    double qtol = qscale * cfg.tol_rank;
    for (int i = 0; i < n2; ++i) {
        double lam = sa.eigenvalues()(i);
        if (lam > qtol) ++an.n_plus;
        else if (std::abs(lam) <= qtol) ++an.n_zero;
    }

    Mat A = symplectic_J(n) * Q;
    double ascale = A.cwiseAbs().maxCoeff();
    if (ascale < 1e-300) return an; // zero generator: constant path

    Mat Ah = A / ascale;
    // Entire generator nilpotent: no nonzero frequencies, and the power
    // test avoids the eigensolver's splatter on nilpotent input entirely.
    Mat P = Ah;
    for (int k = 1; k < n2; ++k) P = P * Ah;
    if (P.cwiseAbs().maxCoeff() < 1e-8) return an;

    int g0 = zero_alg_mult(Ah);

    Eigen::EigenSolver<Mat> es(Ah);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("eigendecomposition of the generator failed");
    std::vector<int> order(n2);
    for (int i = 0; i < n2; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(es.eigenvalues()(a)) < std::abs(es.eigenvalues()(b));
    });
    // The g0 smallest-magnitude eigenvalues are the zero cluster; they are
    // fully accounted for by n_zero (geometric) and the t = 0 endpoint term.
    std::vector<int> rest(order.begin() + g0, order.end());

    // Group the remaining eigenvalues into clusters of nearby values.
    const double ctol = 1e-5;
    std::vector<std::vector<int>> clusters;
    std::vector<bool> used(rest.size(), false);
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (used[i]) continue;
        std::vector<int> cl{rest[i]};
        used[i] = true;
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(es.eigenvalues()(rest[i]) - es.eigenvalues()(rest[j])) <
                ctol * (1.0 + std::abs(es.eigenvalues()(rest[i])))) {
                cl.push_back(rest[j]);
                used[j] = true;
            }
        }
        clusters.push_back(std::move(cl));
    }

    CMat minus_iJ = (std::complex<double>(0, -1) *
                     symplectic_J(n).cast<std::complex<double>>());
    for (const auto& cl : clusters) {
        std::complex<double> center(0, 0);
        for (int idx : cl) center += es.eigenvalues()(idx);
        center /= static_cast<double>(cl.size());
        if (std::abs(center.real()) > 1e-6 * (1.0 + std::abs(center.imag())))
            continue; // real pair or complex quadruple: never on the unit circle
        Mode m;
        m.beta = center.imag() * ascale;
        m.exact = false;
        // Eigenspace dimension from the span of the cluster's eigenvectors.
        CMat V(n2, static_cast<int>(cl.size()));
        for (std::size_t j = 0; j < cl.size(); ++j) V.col(j) = es.eigenvectors().col(cl[j]);
        Eigen::JacobiSVD<CMat> svd(V, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        int r = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-8 * sv(0)) ++r;
        m.geo = r;
        if (r < static_cast<int>(cl.size())) {
            m.krein_ok = false; // defective frequency: crossing data unreliable
            an.clean = false;
        } else {
            CMat U = svd.matrixU().leftCols(r);
            CMat K = U.adjoint() * minus_iJ * U;
            Eigen::SelfAdjointEigenSolver<CMat> ke(K);
            for (int i = 0; i < r; ++i) {
                double kv = ke.eigenvalues()(i);
                if (kv > 1e-6) ++m.kpos;
                else if (kv < -1e-6) ++m.kneg;
                else {
                    m.krein_ok = false;
                    an.clean = false;
                }
            }
        }
        an.modes.push_back(m);
    }
    return an;
}

BlockAnalysis analyze_block(const BlockSpec& b, const Config& cfg) {
    if (const auto* z = std::get_if<ZeroForm>(&b)) {
        return {{}, 0, 2 * z->nu0, z->nu0, true};
    }
    if (const auto* q0 = std::get_if<Q0Block>(&b)) {
        return {{}, q0->d - 1, 2, q0->d, true};
    }
    if (const auto* qs = std::get_if<QSignBlock>(&b)) {
        return {{}, qs->sign > 0 ? qs->d : qs->d - 1, 1, qs->d, true};
    }
    if (const auto* rot = std::get_if<RotationBlock>(&b)) {
        const Angle& th = rot->theta;
        Mode plus{th.radians(), th.is_exact(), th.pi_num(), th.pi_den(), 1, 0, 1, true};
        Mode minus{-th.radians(), th.is_exact(), -th.pi_num(), th.pi_den(), 0, 1, 1, true};
        return {{plus, minus}, 2, 0, 1, true};
    }
    if (std::get_if<HyperbolicBlock>(&b)) {
        return {{}, 1, 0, 1, true};
    }
    return analyze_generic(std::get<GenericBlock>(b).Q, cfg);
}

struct CrossCount {
    std::int64_t interior = 0;
    bool end = false;
};

// Integers strictly between lo and hi (Fractions).
std::int64_t integers_strictly_between(const Fraction& lo, const Fraction& hi) {
    std::int64_t jmin = lo.floor() + 1;
    Fraction neg_hi = -hi;
    std::int64_t jmax = -(neg_hi.floor()) - 1; // ceil(hi) - 1
    return std::max<std::int64_t>(0, jmax - jmin + 1);
}

// Crossing times of the branch e^{i b pi t} with e^{i t0 pi}, t in (0, 1):
// solutions of t0 + 2j = b t.  All quantities in units of pi.
CrossCount count_exact(const Fraction& b_pi, const Fraction& t0_pi) {
    CrossCount c;
    Fraction half_diff = (b_pi - t0_pi) / Fraction(2);
    c.end = half_diff.is_integer();
    if (b_pi > Fraction(0)) {
        c.interior = integers_strictly_between(-t0_pi / Fraction(2), half_diff);
    } else {
        c.interior = integers_strictly_between(half_diff, -t0_pi / Fraction(2));
    }
    return c;
}

// Near-integer positions are snapped: they absorb double rounding from
// large multiplier products (documented numeric guard, width 1e-8).
bool is_integer_snapped(double x) {
    return std::abs(x - std::round(x)) < 1e-8 + 1e-14 * std::abs(x);
}

double snap_to_integer(double x) { return is_integer_snapped(x) ? std::round(x) : x; }

std::int64_t integers_strictly_between(double lo, double hi) {
    double slo = snap_to_integer(lo), shi = snap_to_integer(hi);
    std::int64_t jmin = static_cast<std::int64_t>(std::floor(slo)) + 1;
    std::int64_t jmax = is_integer_snapped(hi) ? static_cast<std::int64_t>(shi) - 1
                                               : static_cast<std::int64_t>(std::floor(shi));
    return std::max<std::int64_t>(0, jmax - jmin + 1);
}

CrossCount count_numeric(double b_pi, double t0_pi) {
    CrossCount c;
    double half_diff = (b_pi - t0_pi) / 2.0;
    c.end = is_integer_snapped(half_diff);
    if (b_pi > 0) {
        c.interior = integers_strictly_between(-t0_pi / 2.0, half_diff);
    } else {
        c.interior = integers_strictly_between(half_diff, -t0_pi / 2.0);
    }
    return c;
}

CrossCount branch_crossings(const Mode& mode, std::int64_t M, const Angle& omega) {
    if (mode.exact && omega.is_exact()) {
        if (std::abs(M) > kMaxMultiplier ||
            (mode.p != 0 &&
             std::abs(M) > (std::numeric_limits<std::int64_t>::max() / 256) / std::abs(mode.p)))
            throw ValidationError("iterate multiplier exceeds the exact-arithmetic cap");
        Fraction b_pi(M * mode.p, mode.q);
        Fraction t0_pi(omega.pi_num(), omega.pi_den());
        return count_exact(b_pi, t0_pi);
    }
    double b_pi = static_cast<double>(M) * mode.beta / kPi;
    double t0_pi = omega.is_exact()
                       ? static_cast<double>(omega.pi_num()) / static_cast<double>(omega.pi_den())
                       : omega.radians() / kPi;
    return count_numeric(b_pi, t0_pi);
}

struct OmegaIdx {
    std::int64_t i = 0;
    std::int64_t nu = 0;
    std::int64_t mu_plus = 0;
};

// Closed-form lower index, nullity and upper index of one block's iterate
// at omega, valid when the analysis is clean.  The nullity part is valid
// regardless of Krein data (it only needs eigenspace dimensions).
OmegaIdx clean_indices(const BlockAnalysis& an, std::int64_t M, const Angle& omega) {
    OmegaIdx r;
    const bool at_one = omega.is_zero();
    if (at_one) {
        r.i += an.n_plus - an.n;
        r.mu_plus += an.n_plus + an.n_zero - an.n;
        r.nu += an.n_zero;
    }
    for (const Mode& m : an.modes) {
        CrossCount cc = branch_crossings(m, M, omega);
        std::int64_t sgn = m.beta > 0 ? 1 : -1;
        std::int64_t sig = m.kpos - m.kneg;
        r.i += cc.interior * sgn * sig;
        r.mu_plus += cc.interior * sgn * sig;
        if (cc.end) {
            r.nu += m.geo;
            r.i -= (m.beta > 0 ? m.kneg : m.kpos);
            r.mu_plus += (m.beta > 0 ? m.kpos : m.kneg);
        }
    }
    return r;
}

std::int64_t block_nullity(const BlockAnalysis& an, std::int64_t M, const Angle& omega) {
    std::int64_t nu = omega.is_zero() ? an.n_zero : 0;
    for (const Mode& m : an.modes)
        if (branch_crossings(m, M, omega).end) nu += m.geo;
    return nu;
}

// Lower (sense == -1) or upper (sense == +1) index of a generic block via
// the generator perturbation Q + sense*s*I, with s walked down a ladder
// until two consecutive rungs agree.
std::int64_t ladder_index(const Mat& Q, std::int64_t M, const Angle& omega, const Config& cfg,
                          int sense) {
    const int n2 = static_cast<int>(Q.rows());
    double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Mat> sa(Q);
    double base = 1e-3 * scale / static_cast<double>(std::max<std::int64_t>(1, std::abs(M)));
    std::int64_t prev = std::numeric_limits<std::int64_t>::min();
    bool have_prev = false;
    for (int j = 0; j < 8; ++j) {
        double s = base * std::pow(10.0, -j);
        if (s < 1e-13 * scale) break;
        // Q + sense*s*I singular makes the rung degenerate; skip it.
        bool near_spectrum = false;
        for (int i = 0; i < n2; ++i)
            if (std::abs(sense * s + sa.eigenvalues()(i)) < 1e-3 * s) near_spectrum = true;
        if (near_spectrum) continue;
        Mat Qs = Q + static_cast<double>(sense) * s * Mat::Identity(n2, n2);
        BlockAnalysis an = analyze_generic(Qs, cfg);
        if (!an.clean) continue;
        std::int64_t val = clean_indices(an, M, omega).i;
        if (have_prev && val == prev) return val;
        prev = val;
        have_prev = true;
    }
    throw NumericalFailure("index perturbation ladder failed to stabilize");
}

OmegaIdx block_indices(const BlockSpec& b, const BlockAnalysis& an, std::int64_t M,
                       const Angle& omega, const Config& cfg) {
    if (an.clean) return clean_indices(an, M, omega);
    const auto* g = std::get_if<GenericBlock>(&b);
    if (!g)
        throw NumericalFailure("internal error: non-generic block required the ladder");
    OmegaIdx r;
    r.nu = block_nullity(an, M, omega);
    r.i = ladder_index(g->Q, M, omega, cfg, -1);
    r.mu_plus = ladder_index(g->Q, M, omega, cfg, +1);
    if (r.mu_plus - r.i != r.nu)
        throw NumericalFailure(
            "index consistency check failed: mu_plus - mu_minus != nullity on a generic block");
    return r;
}

std::int64_t checked_total_multiplier(const PathSpec& p, std::int64_t m) {
    if (m < 1) throw ValidationError("iterate: m must be >= 1");
    if (p.multiplier > kMaxMultiplier / m)
        throw ValidationError("iterate multiplier exceeds the exact-arithmetic cap");
    return p.multiplier * m;
}

} // namespace

std::int64_t maslov_index(const PathSpec& p, const Angle& omega, const Config& cfg) {
    validate(p, cfg);
    std::int64_t M = checked_total_multiplier(p, 1);
    std::int64_t i = 0;
    for (const auto& b : p.blocks) {
        BlockAnalysis an = analyze_block(b, cfg);
        i += block_indices(b, an, M, omega, cfg).i;
    }
    return i;
}

std::int64_t nullity_at_angle(const PathSpec& p, const Angle& omega, const Config& cfg) {
    validate(p, cfg);
    std::int64_t M = checked_total_multiplier(p, 1);
    std::int64_t nu = 0;
    for (const auto& b : p.blocks) {
        BlockAnalysis an = analyze_block(b, cfg);
        nu += block_nullity(an, M, omega);
    }
    return nu;
}

std::optional<Fraction> mean_index_exact(const PathSpec& p, const Config& cfg) {
    validate(p, cfg);
    Fraction total(0);
    for (const auto& b : p.blocks) {
        BlockAnalysis an = analyze_block(b, cfg);
        for (const Mode& m : an.modes) {
            if (m.beta <= 0) continue;
            if (!m.exact || !m.krein_ok) return std::nullopt;
            total = total + Fraction(m.p, m.q) * Fraction(m.kpos - m.kneg);
        }
    }
    return total * Fraction(p.multiplier);
}

double mean_index(const PathSpec& p, const Config& cfg) {
    validate(p, cfg);
    if (auto ex = mean_index_exact(p, cfg)) return ex->to_double();
    double total = 0.0;
    for (const auto& b : p.blocks) {
        BlockAnalysis an = analyze_block(b, cfg);
        bool need_ladder = false;
        double block_sum = 0.0;
        for (const Mode& m : an.modes) {
            if (m.beta <= 0) continue;
            if (!m.krein_ok) { need_ladder = true; break; }
            block_sum += static_cast<double>(m.kpos - m.kneg) * m.beta / kPi;
        }
        if (need_ladder) {
            // Resolve defective frequencies on the first clean ladder rung:
            // the Krein signature of a frequency cluster is stable under the
            // generator perturbation.
            const auto* g = std::get_if<GenericBlock>(&b);
            if (!g) throw NumericalFailure("internal error: defective mode on a named block");
            const Mat& Q = g->Q;
            double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
            block_sum = 0.0;
            bool done = false;
            for (int j = 0; j < 8 && !done; ++j) {
                double s = 1e-3 * scale * std::pow(10.0, -j);
                Mat Qs = Q - s * Mat::Identity(Q.rows(), Q.cols());
                BlockAnalysis ans = analyze_generic(Qs, cfg);
                if (!ans.clean) continue;
                block_sum = 0.0;
                for (const Mode& m : ans.modes)
                    if (m.beta > 0)
                        block_sum += static_cast<double>(m.kpos - m.kneg) * m.beta / kPi;
                done = true;
            }
            if (!done) throw NumericalFailure("mean index ladder failed to stabilize");
        }
        total += block_sum;
    }
    return total * static_cast<double>(p.multiplier);
}

IndexRecord index_at_iterate(const PathSpec& p, std::int64_t m, const Config& cfg) {
    validate(p, cfg);
    std::int64_t M = checked_total_multiplier(p, m);
    Angle one = Angle::exact_pi(0, 1);
    IndexRecord r;
    r.m = m;
    for (const auto& b : p.blocks) {
        BlockAnalysis an = analyze_block(b, cfg);
        OmegaIdx oi = block_indices(b, an, M, one, cfg);
        r.i += oi.i;
        r.nu += oi.nu;
        r.mu_plus += oi.mu_plus;
    }
    r.mu_minus = r.i;
    if (r.mu_plus != r.i + r.nu)
        throw NumericalFailure("index consistency check failed: mu_plus != i + nu");
    r.mean = mean_index(p, cfg) * static_cast<double>(m);
    return r;
}

} // namespace sympath
