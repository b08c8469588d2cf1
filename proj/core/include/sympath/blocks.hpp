#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sympath/angle.hpp"
#include "sympath/config.hpp"
#include "sympath/matrix.hpp"

namespace sympath {

// Generator blocks.  Each block describes a linear Hamiltonian
// H(z) = 1/2 z^T B z on R^{2d} in (p, q) coordinates, giving the path
// t -> exp(t J B) on [0, 1].  Paths are symplectic direct sums of blocks.

// B = 0 on R^{2*nu0}: the constant identity path.
struct ZeroForm {
    int nu0 = 1;
};

// Nilpotent block with two Jordan chains at eigenvalue 1 of the end matrix;
// B = [[0, A], [A^T, 0]] with A the d x d superdiagonal shift, d odd.
struct Q0Block {
    int d = 1;
};

// Nilpotent block with a single Jordan chain of size 2d at eigenvalue 1;
// B = sign * [[D, A], [A^T, 0]] with D = e_d e_d^T.  sign is +1 or -1.
struct QSignBlock {
    int d = 1;
    int sign = 1;
};

// Planar rotation: B = theta * I_2, path t -> R(theta t),
// R(a) = [[cos a, -sin a], [sin a, cos a]].  Requires theta in (0, 2*pi).
struct RotationBlock {
    Angle theta;
};

// Planar hyperbolic stretch: B = [[0, -a], [-a, 0]],
// path t -> diag(e^{a t}, e^{-a t}).  Requires a != 0.
struct HyperbolicBlock {
    double a = 1.0;
};

// Arbitrary symmetric quadratic form Q on R^{2m}; path t -> exp(t J Q).
struct GenericBlock {
    Mat Q;
};

using BlockSpec = std::variant<ZeroForm, Q0Block, QSignBlock, RotationBlock,
                               HyperbolicBlock, GenericBlock>;

// A path t -> gamma(multiplier * t) on [0, 1], where gamma is the direct sum
// of the blocks.  multiplier > 1 represents an iterate without rewriting the
// blocks (rewriting angles mod 2*pi would change the homotopy class).
struct PathSpec {
    std::vector<BlockSpec> blocks;
    std::int64_t multiplier = 1;
};

int half_dim(const BlockSpec& b);
int half_dim(const PathSpec& p);
std::string kind_name(const BlockSpec& b);

// Throws ValidationError on out-of-contract parameters (even/nonpositive d
// for the two-chain nilpotent block, zero rotation angle, non-symmetric Q,
// nonpositive multiplier, empty block list, ...).
void validate(const BlockSpec& b, const Config& cfg);
void validate(const PathSpec& p, const Config& cfg);

// The symmetric matrix B of the block's Hamiltonian.
Mat generator_matrix(const BlockSpec& b);
// Direct sum of the block generators (multiplier NOT applied).
Mat generator_matrix(const PathSpec& p);

// Multiset invariants of a totally degenerate path written in named
// degenerate blocks: nu0 identity planes, b0 two-chain nilpotent blocks,
// b_plus / b_minus single-chain blocks of each sign.
struct AGInvariants {
    int nu0 = 0;
    int b0 = 0;
    int b_plus = 0;
    int b_minus = 0;
    int beta_plus() const { return nu0 + b0 + b_plus; }
    int beta_minus() const { return nu0 + b0 + b_minus; }
    int nullity() const { return 2 * (nu0 + b0) + b_plus + b_minus; }
};

// Counts blocks of the three degenerate kinds.  Throws PreconditionError if
// the path contains any other kind.
AGInvariants invariants_of(const PathSpec& p);

// Splits the blocks into (degenerate part, nondegenerate part) by the
// spectrum of each block's end matrix: all eigenvalues equal to 1 vs. no
// eigenvalue equal to 1.  A block mixing both throws PreconditionError.
std::pair<PathSpec, PathSpec> degenerate_split(const PathSpec& p, const Config& cfg);

// JSON round trip (schema documented in the README).  Text-based so the
// installed headers do not depend on a JSON library.
PathSpec path_from_json_text(const std::string& text, const Config& cfg);
std::string path_to_json_text(const PathSpec& p, int indent = 2);

} // namespace sympath
