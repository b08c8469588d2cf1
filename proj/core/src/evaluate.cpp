#include "sympath/evaluate.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "sympath/errors.hpp"

namespace sympath {

namespace {

// exp(N) for nilpotent N with N^steps == 0, by the finite series.
Mat nilpotent_exp(const Mat& N, int steps) {
    Mat term = Mat::Identity(N.rows(), N.cols());
    Mat sum = term;
    for (int k = 1; k < steps; ++k) {
        term = term * N / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

Mat evaluate_block(const BlockSpec& b, double s, const Config& cfg) {
    return std::visit(
        [&](const auto& blk) -> Mat {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, ZeroForm>) {
                return Mat::Identity(2 * blk.nu0, 2 * blk.nu0);
            } else if constexpr (std::is_same_v<T, Q0Block>) {
                int d = blk.d;
                Mat JB = symplectic_J(d) * generator_matrix(b);
                return nilpotent_exp(s * JB, d);
            } else if constexpr (std::is_same_v<T, QSignBlock>) {
                int d = blk.d;
                Mat JB = symplectic_J(d) * generator_matrix(b);
                return nilpotent_exp(s * JB, 2 * d + 1);
            } else if constexpr (std::is_same_v<T, RotationBlock>) {
                double a = s * blk.theta.radians();
                Mat R(2, 2);
                R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
                return R;
            } else if constexpr (std::is_same_v<T, HyperbolicBlock>) {
                double x = blk.a * s;
                if (std::abs(x) > 700.0)
                    throw NumericalFailure(
                        "hyperbolic block: exp(" + std::to_string(x) +
                        ") overflows; explicit evaluation at this iterate is unsupported");
                Mat M = Mat::Zero(2, 2);
                M(0, 0) = std::exp(x);
                M(1, 1) = std::exp(-x);
                return M;
            } else {
                int n = static_cast<int>(blk.Q.rows()) / 2;
                Mat A = s * symplectic_J(n) * blk.Q;
                // exp(A) overflows iff the real spectral abscissa is too
                // large; a rotation-like generator has huge entries but a
                // purely imaginary spectrum and stays bounded.
                Eigen::EigenSolver<Mat> es(A, /*computeEigenvectors=*/false);
                double rho = es.info() == Eigen::Success
                                 ? es.eigenvalues().real().cwiseAbs().maxCoeff()
                                 : A.cwiseAbs().maxCoeff() * A.rows();
                if (rho > 700.0)
                    throw NumericalFailure(
                        "generic block: matrix exponential would overflow at this iterate");
                (void)cfg;
                return A.exp();
            }
        },
        b);
}

} // namespace

Mat evaluate(const PathSpec& p, double t, const Config& cfg) {
    validate(p, cfg);
    double s = static_cast<double>(p.multiplier) * t;
    Mat M = evaluate_block(p.blocks.front(), s, cfg);
    for (std::size_t i = 1; i < p.blocks.size(); ++i)
        M = direct_sum(M, evaluate_block(p.blocks[i], s, cfg));
    return M;
}

Mat end_matrix(const PathSpec& p, const Config& cfg) { return evaluate(p, 1.0, cfg); }

PathSpec iterate(const PathSpec& p, std::int64_t m) {
    if (m < 1) throw ValidationError("iterate: m must be >= 1");
    // Same cap as the index engine's exact crossing arithmetic.
    if (p.multiplier > static_cast<std::int64_t>(1e12) / m)
        throw ValidationError("iterate: combined multiplier too large");
    PathSpec q = p;
    q.multiplier = p.multiplier * m;
    return q;
}

bool has_unipotent_char_poly(const Mat& M, double tol) {
    // Faddeev-LeVerrier: M_1 = M, c_1 = -tr M_1; M_{k+1} = M (M_k + c_k I).
    // Char poly = lambda^n + c_1 lambda^{n-1} + ... + c_n.
    int n = static_cast<int>(M.rows());
    Mat Mk = M;
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        c[k] = -Mk.trace() / static_cast<double>(k);
        if (k < n) Mk = M * (Mk + c[k] * Mat::Identity(n, n));
    }
    // (lambda - 1)^n has coefficient (-1)^k binom(n, k) on lambda^{n-k}.
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        double want = (k % 2 == 0 ? binom : -binom);
        if (std::abs(c[k] - want) > tol * std::max(1.0, std::abs(want))) return false;
        binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return true;
}

} // namespace sympath
