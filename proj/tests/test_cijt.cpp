#include "doctest.h"

#include <cmath>
#include <optional>
#include <vector>

#include "sympath/blocks.hpp"
#include "sympath/cijt.hpp"
#include "sympath/config.hpp"
#include "sympath/errors.hpp"
#include "sympath/evaluate.hpp"
#include "sympath/index.hpp"
#include "sympath/splitting.hpp"
#include "sympath/verify.hpp"

using namespace sympath;

namespace {
const Config cfg;

PathSpec single(BlockSpec b, std::int64_t mult = 1) {
    PathSpec p;
    p.blocks = {std::move(b)};
    p.multiplier = mult;
    return p;
}

PathSpec rot(int num, int den) { return single(RotationBlock{Angle::exact_pi(num, den)}); }
} // namespace

TEST_CASE("first nullity-changing iterate over a collection") {
    // single quarter turn: eigenvalues return to 1 at the 4th iterate
    CHECK(m_check({rot(1, 2)}, cfg) == std::optional<std::int64_t>(4));
    // 2*pi/3 returns at 3, the half turn at 2: the minimum wins
    CHECK(m_check({rot(2, 3), rot(1, 1)}, cfg) == std::optional<std::int64_t>(2));
    // no exact angle anywhere: never
    CHECK_FALSE(m_check({single(HyperbolicBlock{1.0})}, cfg).has_value());
    CHECK_FALSE(m_check({single(RotationBlock{Angle::numeric(1.0)})}, cfg).has_value());
    // numeric angles never contribute even when mixed in
    CHECK(m_check({rot(1, 2), single(RotationBlock{Angle::numeric(1.0)})}, cfg) ==
          std::optional<std::int64_t>(4));
}

TEST_CASE("common period of the exact angles") {
    CHECK(m_bar({rot(2, 3)}, cfg) == 3);
    CHECK(m_bar({rot(1, 2), rot(2, 3)}, cfg) == 6);
    CHECK(m_bar({rot(1, 1)}, cfg) == 1);
    CHECK(m_bar({single(HyperbolicBlock{1.0})}, cfg) == 1);
    CHECK(m_bar({single(RotationBlock{Angle::numeric(1.0)})}, cfg) == 1);
}

TEST_CASE("plain jump scan: smallest tuple for a single integer mean") {
    // mean 2: N = 1 gives fractional part 1/2, N = 2 lands exactly
    auto certs = find_jump_tuples({2.0}, 1, 1e-6, 1, 100);
    REQUIRE(certs.size() == 1);
    CHECK(certs[0].N == 2);
    CHECK(certs[0].m == std::vector<std::int64_t>{1});
    CHECK(certs[0].chi == std::vector<int>{0});
    CHECK(certs[0].residuals[0] == doctest::Approx(0.0));

    // m_bar scales the iterates
    auto scaled = find_jump_tuples({2.0}, 6, 1e-6, 1, 100);
    REQUIRE(scaled.size() == 1);
    CHECK(scaled[0].N == 12);
    CHECK(scaled[0].m == std::vector<std::int64_t>{6});
}

TEST_CASE("plain jump scan: incommensurable pair") {
    const double s2 = std::sqrt(2.0);
    auto certs = find_jump_tuples({1.0, s2}, 1, 0.01, 3, 1000000);
    REQUIRE(certs.size() == 3);
    for (const auto& c : certs) {
        REQUIRE(c.m.size() == 2);
        for (int k = 0; k < 2; ++k) {
            double mean = k == 0 ? 1.0 : s2;
            double x = static_cast<double>(c.N) / mean;
            double f = x - std::floor(x);
            double resid = c.chi[k] == 0 ? f : 1.0 - f;
            CHECK(resid < 0.01);
            CHECK(c.m[k] == static_cast<std::int64_t>(std::floor(x)) + c.chi[k]);
        }
    }
    // certificates come out in increasing N
    CHECK(certs[0].N < certs[1].N);
    CHECK(certs[1].N < certs[2].N);
}

TEST_CASE("plain jump scan: input validation") {
    CHECK_THROWS_AS(find_jump_tuples({}, 1, 1e-3, 1, 100), ValidationError);
    CHECK_THROWS_AS(find_jump_tuples({0.0}, 1, 1e-3, 1, 100), PreconditionError);
    CHECK_THROWS_AS(find_jump_tuples({-2.0}, 1, 1e-3, 1, 100), PreconditionError);
    CHECK_THROWS_AS(find_jump_tuples({2.0}, 1, 0.6, 1, 100), PreconditionError);
    CHECK_THROWS_AS(find_jump_tuples({2.0}, 0, 1e-3, 1, 100), ValidationError);
    // a short scan returns what it found without throwing
    CHECK(find_jump_tuples({3.0, 3.141592653589793}, 1, 1e-4, 5, 50).size() <= 5);
}

TEST_CASE("spec-aware search: rational collections land exactly") {
    // means: rot(1,2) -> 1/2, rot(2,3)+zero -> 2/3; m_bar = 6
    std::vector<PathSpec> specs = {rot(1, 2), [] {
                                       PathSpec p;
                                       p.blocks = {RotationBlock{Angle::exact_pi(2, 3)},
                                                   ZeroForm{1}};
                                       return p;
                                   }()};
    Config c = cfg;
    c.epsilon = 1e-3;
    c.want = 3;
    JumpSearchResult res = search_jump_tuples(specs, c);
    CHECK(res.m_bar == 6);
    CHECK(res.window == 0.0); // no numeric angles anywhere
    REQUIRE(res.certs.size() == 3);
    for (const auto& cert : res.certs) {
        // exact rational means admit only residual 0 under the guard
        for (double r : cert.residuals) CHECK(r == 0.0);
        for (int chi : cert.chi) CHECK(chi == 0);
        for (std::size_t k = 0; k < specs.size(); ++k) {
            // the defining property: 2 m_k ihat_k == 2 N
            double ihat = mean_index(specs[k], cfg);
            CHECK(2.0 * static_cast<double>(cert.m[k]) * ihat ==
                  doctest::Approx(2.0 * static_cast<double>(cert.N)).epsilon(1e-12));
            // iterates are multiples of the common period
            CHECK(cert.m[k] % res.m_bar == 0);
        }
    }
}

TEST_CASE("spec-aware search: windows constrain irrational angles") {
    std::vector<PathSpec> specs = {rot(1, 1), single(RotationBlock{Angle::numeric(1.0)})};
    Config c = cfg;
    c.epsilon = 1e-2;
    c.want = 2;
    c.n_max = 2000000;
    JumpSearchResult res = search_jump_tuples(specs, c);
    CHECK(res.window > 0.0);
    CHECK(res.window <= c.delta);
    REQUIRE(!res.certs.empty());
    const double theta = 1.0;
    for (const auto& cert : res.certs) {
        // the accepted iterate must pin the irrational angle near a
        // multiple of pi on the side matching chi
        double u = std::fmod(cert.m[1] * theta / std::acos(-1.0), 1.0);
        INFO("u = ", u, " chi = ", cert.chi[1]);
        if (cert.chi[1] == 0) CHECK(u > 1.0 - res.window);
        else CHECK(u < res.window);
    }
}

TEST_CASE("spec-aware search: guards reject unusable epsilon") {
    // large mean * epsilon wrecks the carry bookkeeping -> precondition
    std::vector<PathSpec> specs = {single(RotationBlock{Angle::exact_pi(1, 1)}, 1000)};
    Config c = cfg;
    c.epsilon = 1e-3; // 2 * mean * epsilon = 2.0 > 1/2
    CHECK_THROWS_AS(search_jump_tuples(specs, c), PreconditionError);
}

TEST_CASE("resonant splitting sum counts doubly resonant angles") {
    // end matrix -I: angle pi with S-(pi) = 1
    PathSpec p = rot(1, 1);
    // m_k * pi / pi integral for every m_k; m * pi / (2 pi) integral iff m even
    CHECK(resonant_split_sum(p, 2, 2, cfg) == 1);
    CHECK(resonant_split_sum(p, 2, 1, cfg) == 0);
    CHECK(resonant_split_sum(p, 3, 4, cfg) == 1);
    // identity end matrix: no angles in (0, 2 pi)
    CHECK(resonant_split_sum(single(ZeroForm{2}), 5, 5, cfg) == 0);
    // quarter turn: angle pi/2 (S- = 1) and 3 pi/2 (S- = 0);
    // m_k = 2 leaves {2 * (1/2)} = 0 integral, m = 4 closes the circle
    CHECK(resonant_split_sum(rot(1, 2), 2, 4, cfg) == 1);
    CHECK(resonant_split_sum(rot(1, 2), 1, 4, cfg) == 0); // m_k theta not in pi Z
    CHECK(resonant_split_sum(rot(1, 2), 2, 2, cfg) == 0); // m theta not in 2 pi Z
    // numeric angles never contribute
    CHECK(resonant_split_sum(single(RotationBlock{Angle::numeric(1.0)}), 7, 7, cfg) == 0);
}

TEST_CASE("resonant sum turns the splitting-number recursion into an identity") {
    // For m_k = m the resonant sum collects exactly the angles with
    // omega^m = 1, omega != 1:  S-(1 of the m-th iterate) =
    // S-(1) + resonant_split_sum(m, m).
    const Angle one = Angle::exact_pi(0, 1);
    for (std::uint64_t seed = 600; seed < 620; ++seed) {
        PathSpec p = make_random_collection(seed, 1, cfg, false)[0];
        for (std::int64_t m = 1; m <= 10; ++m) {
            std::int64_t lhs = splitting_numbers(iterate(p, m), one, cfg).minus;
            std::int64_t rhs =
                splitting_numbers(p, one, cfg).minus + resonant_split_sum(p, m, m, cfg);
            INFO("m = ", m);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("near-resonance sum keeps strict windows") {
    PathSpec p = rot(2, 3); // angles 2 pi/3 (S- = 1), 4 pi/3 (S- = 0)
    // m_k = 3: both fractional parts {m_k theta/pi} are 0 -> excluded
    CHECK(near_resonance_split_sum(p, 3, 0.5, cfg).value == 0);
    // m_k = 1: {2/3} = 0.667 and {4/3} = 0.333
    CHECK(near_resonance_split_sum(p, 1, 0.1, cfg).value == 0);
    CHECK(near_resonance_split_sum(p, 1, 0.5, cfg).value == 0);  // only the S- = 0 row enters
    CHECK(near_resonance_split_sum(p, 1, 0.7, cfg).value == 1);  // now the S- = 1 row enters
    auto nr = near_resonance_split_sum(p, 1, 0.7, cfg);
    REQUIRE(nr.fracs.size() == 2);
    CHECK_THROWS_AS(near_resonance_split_sum(p, 1, 0.0, cfg), ValidationError);
    CHECK_THROWS_AS(near_resonance_split_sum(p, 1, 1.5, cfg), ValidationError);
}

TEST_CASE("total splitting constant sums the profile") {
    CHECK(total_split_sum(rot(2, 3), cfg) == 1);      // (0,1) + (1,0) rows
    CHECK(total_split_sum(rot(1, 1), cfg) == 1);      // (1,1) at pi
    CHECK(total_split_sum(single(ZeroForm{3}), cfg) == 0);
    CHECK(total_split_sum(single(HyperbolicBlock{1.0}), cfg) == 0);
    PathSpec mixed;
    mixed.blocks = {RotationBlock{Angle::exact_pi(2, 3)}, RotationBlock{Angle::exact_pi(1, 1)},
                    ZeroForm{1}};
    CHECK(total_split_sum(mixed, cfg) == 2);
}
