// Index engine tests against independent oracles:
//  - planar polar-winding index for nondegenerate-end 2x2 paths,
//  - closed-form rotation index/nullity arithmetic,
//  - unitary-determinant rotation number for the mean index,
//  - iterate/root-of-unity sum identities (computed on different code paths).

#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sympath/blocks.hpp"
#include "sympath/config.hpp"
#include "sympath/evaluate.hpp"
#include "sympath/index.hpp"
#include "sympath/verify.hpp"

using namespace sympath;

namespace {

const Config cfg;
constexpr double kPi = std::numbers::pi;

PathSpec single(BlockSpec b, std::int64_t mult = 1) {
    PathSpec p;
    p.blocks = {std::move(b)};
    p.multiplier = mult;
    return p;
}

double wrap_pi(double d) {
    while (d > kPi) d -= 2 * kPi;
    while (d <= -kPi) d += 2 * kPi;
    return d;
}

// Total continuous change over [0, 1] of the polar angle
// phi(M) = atan2(M10 - M01, M00 + M11) of a 2x2 symplectic path
// (phi of the orthogonal polar factor; exact for pure rotations).
double winding_lift_planar(const PathSpec& p) {
    int n = 64;
    for (;;) {
        double total = 0.0, prev = 0.0, maxstep = 0.0;
        for (int k = 1; k <= n; ++k) {
            Mat M = evaluate(p, static_cast<double>(k) / n, cfg);
            double phi = std::atan2(M(1, 0) - M(0, 1), M(0, 0) + M(1, 1));
            double d = wrap_pi(phi - prev);
            maxstep = std::max(maxstep, std::abs(d));
            total += d;
            prev = phi;
        }
        if (maxstep < 0.5 || n >= (1 << 20)) return total;
        n *= 2;
    }
}

// Lower index of a planar path with nondegenerate end, from the winding:
// ends with tr < 2 (elliptic sector) carry odd index 2*floor(Phi/2pi) + 1;
// positive-hyperbolic ends carry the even index nearest to Phi/pi.
std::int64_t planar_index_oracle(const PathSpec& p) {
    Mat M = end_matrix(p, cfg);
    double tr = M(0, 0) + M(1, 1);
    REQUIRE(std::abs(2.0 - tr) > 1e-6); // oracle defined for nondegenerate ends
    double phi = winding_lift_planar(p);
    if (tr < 2.0) return 2 * static_cast<std::int64_t>(std::floor(phi / (2 * kPi))) + 1;
    return 2 * static_cast<std::int64_t>(std::llround(phi / (2 * kPi)));
}

// Rotation number of a symplectic path: continuous lift of
// arg det_C(X + iY), where O = [[X, -Y], [Y, X]] is the orthogonal polar
// factor.  For paths with mean index ihat, lift(gamma^m)/(pi m) -> ihat.
double winding_lift_det(const PathSpec& p) {
    int steps = 256;
    for (;;) {
        double total = 0.0, prev = 0.0, maxstep = 0.0;
        for (int k = 1; k <= steps; ++k) {
            Mat M = evaluate(p, static_cast<double>(k) / steps, cfg);
            Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
            Mat O = svd.matrixU() * svd.matrixV().transpose();
            int n = static_cast<int>(M.rows()) / 2;
            Eigen::MatrixXcd Z = O.topLeftCorner(n, n).cast<std::complex<double>>() +
                                 std::complex<double>(0, 1) *
                                     O.bottomLeftCorner(n, n).cast<std::complex<double>>();
            double phi = std::arg(Z.determinant());
            double d = wrap_pi(phi - prev);
            maxstep = std::max(maxstep, std::abs(d));
            total += d;
            prev = phi;
        }
        if (maxstep < 0.5 || steps >= (1 << 18)) return total;
        steps *= 2;
    }
}

// A fixed symplectic frame change with determinant-1 blocks that mixes the
// coordinates properly.
Mat fixed_sp2() {
    Mat g(2, 2);
    g << 2.0, 0.5, 1.0, 0.75; // det = 1
    return g;
}

PathSpec conjugated(const BlockSpec& inner, std::int64_t mult = 1) {
    Mat B = generator_matrix(inner);
    Mat g = fixed_sp2();
    Mat gi = g.inverse();
    Mat Q = gi.transpose() * B * gi;
    return single(GenericBlock{Mat(0.5 * (Q + Q.transpose()))}, mult);
}

} // namespace

TEST_CASE("planar winding oracle fixes the rotation anchors") {
    // R(pi t): half turn, index 1.
    CHECK(planar_index_oracle(single(RotationBlock{Angle::exact_pi(1, 1)})) == 1);
    // full positive turn + half: multiplier 3 of the half turn
    CHECK(planar_index_oracle(single(RotationBlock{Angle::exact_pi(1, 1)}, 3)) == 3);
    // clockwise full turn + half: generator -3*pi/2... via generic block
    Mat Q = -1.5 * kPi * Mat::Identity(2, 2);
    CHECK(planar_index_oracle(single(GenericBlock{Q})) == -1);
    // hyperbolic stays at index 0
    CHECK(planar_index_oracle(single(HyperbolicBlock{0.8})) == 0);
}

TEST_CASE("index engine agrees with the planar winding oracle") {
    std::vector<PathSpec> paths;
    for (auto [num, den] : {std::pair<int, int>{1, 6}, {1, 2}, {2, 3}, {1, 1}, {3, 2}, {5, 3}})
        paths.push_back(single(RotationBlock{Angle::exact_pi(num, den)}));
    paths.push_back(single(RotationBlock{Angle::numeric(1.0)}));
    paths.push_back(single(RotationBlock{Angle::numeric(2.5)}));
    paths.push_back(single(HyperbolicBlock{0.6}));
    paths.push_back(single(HyperbolicBlock{-1.1}));
    paths.push_back(conjugated(RotationBlock{Angle::exact_pi(1, 3)}));
    paths.push_back(conjugated(RotationBlock{Angle::exact_pi(4, 3)}));
    paths.push_back(conjugated(HyperbolicBlock{0.9}));
    // negative-frequency elliptic generator, not expressible as a named
    // rotation block
    paths.push_back(single(GenericBlock{Mat(-0.8 * Mat::Identity(2, 2))}));

    int compared = 0;
    for (const PathSpec& base : paths) {
        for (std::int64_t m = 1; m <= 8; ++m) {
            PathSpec it = iterate(base, m);
            Mat M = end_matrix(it, cfg);
            if (std::abs(2.0 - (M(0, 0) + M(1, 1))) < 1e-6) continue; // degenerate end
            INFO("m = ", m);
            CHECK(index_at_iterate(base, m, cfg).i == planar_index_oracle(it));
            ++compared;
        }
    }
    CHECK(compared > 80);
}

TEST_CASE("rotation index matches the closed-form arithmetic") {
    for (int den : {1, 2, 3, 4, 5, 6}) {
        for (int num = 1; num < 2 * den; ++num) {
            if (std::gcd(num, den) != 1) continue;
            PathSpec p = single(RotationBlock{Angle::exact_pi(num, den)});
            for (std::int64_t m = 1; m <= 24; ++m) {
                IndexRecord r = index_at_iterate(p, m, cfg);
                std::int64_t mp = m * num;
                INFO("theta = ", num, "*pi/", den, ", m = ", m);
                if (mp % (2 * den) == 0) { // resonant iterate: end = I
                    CHECK(r.nu == 2);
                    CHECK(r.i == mp / den - 1);
                    CHECK(r.mu_plus == mp / den + 1);
                } else {
                    CHECK(r.nu == 0);
                    CHECK(r.i == 1 + 2 * ((mp - (mp % (2 * den))) / (2 * den)));
                    CHECK(r.mu_plus == r.i);
                }
                CHECK(r.mean == doctest::Approx(static_cast<double>(mp) / den).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("irrational rotation index follows the floor formula") {
    double theta = 1.0;
    PathSpec p = single(RotationBlock{Angle::numeric(theta)});
    for (std::int64_t m = 1; m <= 50; ++m) {
        IndexRecord r = index_at_iterate(p, m, cfg);
        CHECK(r.i == 1 + 2 * static_cast<std::int64_t>(std::floor(m * theta / (2 * kPi))));
        CHECK(r.nu == 0);
        CHECK(r.mean == doctest::Approx(m * theta / kPi).epsilon(1e-12));
    }
}

TEST_CASE("constant and nilpotent anchors") {
    IndexRecord z = index_at_iterate(single(ZeroForm{2}), 1, cfg);
    CHECK(z.mu_minus == -2);
    CHECK(z.mu_plus == 2);
    CHECK(z.nu == 4);
    CHECK(z.mean == 0.0);

    // full circle as the doubled half turn
    IndexRecord full = index_at_iterate(single(RotationBlock{Angle::exact_pi(1, 1)}, 2), 1, cfg);
    CHECK(full.mu_minus == 1);
    CHECK(full.nu == 2);
    CHECK(full.mu_plus == 3);
    CHECK(full.mean == doctest::Approx(2.0));

    // clockwise full circle
    IndexRecord anti =
        index_at_iterate(single(GenericBlock{Mat(-2 * kPi * Mat::Identity(2, 2))}), 1, cfg);
    CHECK(anti.mu_minus == -3);
    CHECK(anti.nu == 2);
    CHECK(anti.mu_plus == -1);
    CHECK(anti.mean == doctest::Approx(-2.0));

    // unit shears
    IndexRecord sp = index_at_iterate(single(QSignBlock{1, 1}), 1, cfg);
    CHECK(sp.mu_minus == 0);
    CHECK(sp.mu_plus == 1);
    CHECK(sp.nu == 1);
    IndexRecord sm = index_at_iterate(single(QSignBlock{1, -1}), 1, cfg);
    CHECK(sm.mu_minus == -1);
    CHECK(sm.mu_plus == 0);
    CHECK(sm.nu == 1);

    // two-chain nilpotent, d = 3: n_plus(B) = 2, n = 3
    IndexRecord q0 = index_at_iterate(single(Q0Block{3}), 1, cfg);
    CHECK(q0.i == -1);
    CHECK(q0.nu == 2);
    CHECK(q0.mu_plus == 1);
    CHECK(q0.mean == 0.0);

    IndexRecord hy = index_at_iterate(single(HyperbolicBlock{1.0}), 1, cfg);
    CHECK(hy.i == 0);
    CHECK(hy.nu == 0);
    CHECK(hy.mu_plus == 0);
}

TEST_CASE("index, nullity and mean are additive over direct sums") {
    std::vector<BlockSpec> parts = {RotationBlock{Angle::exact_pi(2, 3)},
                                    RotationBlock{Angle::numeric(1.0)}, QSignBlock{2, -1},
                                    HyperbolicBlock{0.5}, Q0Block{3}};
    PathSpec all;
    all.blocks = parts;
    for (std::int64_t m : {1, 2, 3, 7, 12}) {
        IndexRecord sum = index_at_iterate(all, m, cfg);
        std::int64_t i = 0, nu = 0;
        double mean = 0;
        for (const auto& b : parts) {
            IndexRecord r = index_at_iterate(single(b), m, cfg);
            i += r.i;
            nu += r.nu;
            mean += r.mean;
        }
        CHECK(sum.i == i);
        CHECK(sum.nu == nu);
        CHECK(sum.mean == doctest::Approx(mean).epsilon(1e-12));
    }
}

TEST_CASE("iterate index equals the sum over roots of unity") {
    // Bott-type sum: the index/nullity of gamma^m equals the sum of
    // omega-indices over the m-th roots of unity.  The two sides run
    // through different code paths (iterate bookkeeping vs. omega-index).
    std::vector<PathSpec> specs;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        specs.push_back(make_random_collection(seed, 1, cfg, /*with_generic=*/false)[0]);
    specs.push_back(single(RotationBlock{Angle::numeric(1.0)}));

    for (const PathSpec& p : specs) {
        for (std::int64_t m = 1; m <= 12; ++m) {
            std::int64_t isum = 0, nsum = 0;
            for (std::int64_t j = 0; j < m; ++j) {
                Angle omega = Angle::exact_pi(2 * j, m);
                isum += maslov_index(p, omega, cfg);
                nsum += nullity_at_angle(p, omega, cfg);
            }
            IndexRecord r = index_at_iterate(p, m, cfg);
            CHECK(r.i == isum);
            CHECK(r.nu == nsum);
        }
    }
}

TEST_CASE("mu_plus - mu_minus equals the nullity everywhere") {
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        PathSpec p = make_random_collection(seed, 1, cfg, /*with_generic=*/true)[0];
        for (std::int64_t m : {1, 2, 3, 5, 8, 13, 1000003}) {
            IndexRecord r = index_at_iterate(p, m, cfg);
            CHECK(r.mu_plus - r.mu_minus == r.nu);
            CHECK(r.mu_minus == r.i);
        }
    }
}

TEST_CASE("mean index is homogeneous in the iterate") {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        PathSpec p = make_random_collection(seed, 1, cfg, /*with_generic=*/true)[0];
        double base = mean_index(p, cfg);
        for (std::int64_t m = 1; m <= 24; ++m) {
            CHECK(std::abs(mean_index(iterate(p, m), cfg) - m * base) <= 1e-9);
            CHECK(std::abs(index_at_iterate(p, m, cfg).mean - m * base) <= 1e-9);
        }
    }
}

TEST_CASE("mean index matches the polar rotation number") {
    // For pure rotations the determinant winding is exact.
    for (auto [num, den] : {std::pair<int, int>{1, 2}, {2, 3}, {1, 1}}) {
        PathSpec p = single(RotationBlock{Angle::exact_pi(num, den)});
        double phi = winding_lift_det(p);
        CHECK(phi == doctest::Approx(num * kPi / den).epsilon(1e-9));
        CHECK(mean_index(p, cfg) == doctest::Approx(phi / kPi).epsilon(1e-9));
    }
    // In general the rotation number of a high iterate converges to the
    // mean index: |lift(gamma^m)/(pi m) - ihat| <= C/m.
    std::vector<PathSpec> specs = {
        single(RotationBlock{Angle::numeric(1.0)}),
        single(HyperbolicBlock{0.7}),
        conjugated(RotationBlock{Angle::exact_pi(2, 3)}),
        single(QSignBlock{2, -1}),
        single(Q0Block{3}),
    };
    PathSpec mixed;
    mixed.blocks = {RotationBlock{Angle::exact_pi(1, 2)}, HyperbolicBlock{0.5},
                    QSignBlock{1, 1}};
    specs.push_back(mixed);
    for (const PathSpec& p : specs) {
        const std::int64_t m = 64;
        double rot = winding_lift_det(iterate(p, m)) / (kPi * m);
        CHECK(std::abs(rot - mean_index(p, cfg)) <= 2.0 / m);
    }
}

TEST_CASE("exact mean index is rational exactly when all angles are") {
    PathSpec rational;
    rational.blocks = {RotationBlock{Angle::exact_pi(2, 3)}, RotationBlock{Angle::exact_pi(1, 2)},
                       HyperbolicBlock{1.0}};
    auto fr = mean_index_exact(rational, cfg);
    REQUIRE(fr.has_value());
    CHECK(*fr == Fraction(7, 6)); // 2/3 + 1/2
    PathSpec irr = single(RotationBlock{Angle::numeric(1.0)});
    CHECK_FALSE(mean_index_exact(irr, cfg).has_value());
}

TEST_CASE("structural nullity matches matrix-rank nullity at small iterates") {
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
        PathSpec p = make_random_collection(seed, 1, cfg, /*with_generic=*/false)[0];
        Mat E = end_matrix(p, cfg);
        Mat P = Mat::Identity(E.rows(), E.cols());
        for (std::int64_t m = 1; m <= 6; ++m) {
            P = P * E;
            Eigen::JacobiSVD<Mat> svd(P - Mat::Identity(P.rows(), P.cols()));
            double smax = svd.singularValues().maxCoeff();
            std::int64_t null = 0;
            for (int i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()(i) <= 1e-8 * std::max(1.0, smax)) ++null;
            CHECK(index_at_iterate(p, m, cfg).nu == null);
        }
    }
}
