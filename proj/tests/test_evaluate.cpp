#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sympath/blocks.hpp"
#include "sympath/config.hpp"
#include "sympath/errors.hpp"
#include "sympath/evaluate.hpp"
#include "sympath/matrix.hpp"

using namespace sympath;

namespace {
const Config cfg;

PathSpec single(BlockSpec b, std::int64_t mult = 1) {
    PathSpec p;
    p.blocks = {std::move(b)};
    p.multiplier = mult;
    return p;
}
} // namespace

TEST_CASE("paths start at the identity") {
    PathSpec p;
    p.blocks = {RotationBlock{Angle::exact_pi(2, 3)}, QSignBlock{2, -1}, HyperbolicBlock{0.3},
                Q0Block{3}};
    Mat M0 = evaluate(p, 0.0, cfg);
    CHECK((M0 - Mat::Identity(M0.rows(), M0.cols())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation block is a literal rotation") {
    PathSpec p = single(RotationBlock{Angle::exact_pi(1, 2)});
    Mat M = end_matrix(p, cfg); // R(pi/2)
    CHECK(M(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(M(0, 1) == doctest::Approx(-1.0));
    CHECK(M(1, 0) == doctest::Approx(1.0));
    Mat H = evaluate(p, 0.5, cfg); // R(pi/4)
    CHECK(H(0, 0) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("hyperbolic block is a diagonal stretch") {
    PathSpec p = single(HyperbolicBlock{0.7});
    Mat M = evaluate(p, 0.5, cfg);
    CHECK(M(0, 0) == doctest::Approx(std::exp(0.35)));
    CHECK(M(1, 1) == doctest::Approx(std::exp(-0.35)));
    CHECK(M(0, 1) == 0.0);
}

TEST_CASE("single-chain nilpotent end matrices are unit shears for d = 1") {
    // d = 1: B = sign * [[1, 0], [0, 0]], end = [[1, 0], [sign, 1]] in (p, q).
    Mat Mp = end_matrix(single(QSignBlock{1, 1}), cfg);
    CHECK(Mp(0, 0) == doctest::Approx(1.0));
    CHECK(Mp(1, 1) == doctest::Approx(1.0));
    CHECK(Mp(1, 0) == doctest::Approx(1.0));
    CHECK(Mp(0, 1) == doctest::Approx(0.0));
    Mat Mm = end_matrix(single(QSignBlock{1, -1}), cfg);
    CHECK(Mm(1, 0) == doctest::Approx(-1.0));
}

TEST_CASE("nilpotent blocks produce unipotent end matrices") {
    for (BlockSpec b : {BlockSpec{Q0Block{3}}, BlockSpec{Q0Block{5}}, BlockSpec{QSignBlock{2, 1}},
                        BlockSpec{QSignBlock{3, -1}}}) {
        Mat M = end_matrix(single(b), cfg);
        CHECK(symplectic_residual(M) < 1e-12);
        CHECK(has_unipotent_char_poly(M, 1e-8));
        // (M - I)^dim == 0
        Mat N = M - Mat::Identity(M.rows(), M.cols());
        Mat P = Mat::Identity(M.rows(), M.cols());
        for (int k = 0; k < M.rows(); ++k) P = P * N;
        CHECK(P.cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK_FALSE(has_unipotent_char_poly(end_matrix(single(HyperbolicBlock{1.0}), cfg), 1e-8));
}

TEST_CASE("evaluation is a homomorphism in t") {
    PathSpec p;
    p.blocks = {RotationBlock{Angle::numeric(1.0)}, HyperbolicBlock{0.4}, QSignBlock{2, -1}};
    Mat a = evaluate(p, 0.3, cfg);
    Mat b = evaluate(p, 0.5, cfg);
    Mat c = evaluate(p, 0.8, cfg);
    CHECK((a * b - c).cwiseAbs().maxCoeff() < 1e-12); // blocks commute along the path
    CHECK(symplectic_residual(a) < 1e-12);
}

TEST_CASE("iterate composes with evaluation") {
    PathSpec p;
    p.blocks = {RotationBlock{Angle::exact_pi(2, 3)}, HyperbolicBlock{0.5}};
    PathSpec p3 = iterate(p, 3);
    CHECK(p3.multiplier == 3);
    Mat lhs = evaluate(p3, 1.0 / 3.0, cfg);
    Mat rhs = end_matrix(p, cfg);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    Mat end3 = end_matrix(p3, cfg);
    Mat cubed = rhs * rhs * rhs;
    CHECK((end3 - cubed).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(iterate(p, 0), ValidationError);
    PathSpec big = iterate(p, 1000000);
    CHECK_THROWS_AS(iterate(big, 10000000), ValidationError); // product overflows the cap
}

TEST_CASE("huge hyperbolic iterates refuse explicit evaluation") {
    PathSpec p = single(HyperbolicBlock{1.0}, 1);
    CHECK_THROWS_AS(end_matrix(iterate(p, 100000), cfg), NumericalFailure);
}

TEST_CASE("generic block equals the named block it encodes") {
    // A generic block whose Q is the rotation generator evaluates to the
    // same path as the named rotation.
    BlockSpec named{RotationBlock{Angle::exact_pi(1, 3)}};
    PathSpec g = single(GenericBlock{generator_matrix(named)});
    PathSpec r = single(RotationBlock{Angle::exact_pi(1, 3)});
    for (double t : {0.25, 0.5, 1.0}) {
        CHECK((evaluate(g, t, cfg) - evaluate(r, t, cfg)).cwiseAbs().maxCoeff() < 1e-13);
    }
}
