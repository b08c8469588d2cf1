#pragma once

#include "sympath/blocks.hpp"
#include "sympath/config.hpp"
#include "sympath/matrix.hpp"

namespace sympath {

// gamma(multiplier * t) for t in [0, 1]: symplectic direct sum of the block
// evaluations.  Nilpotent kinds use their exact finite exponential series;
// rotation and hyperbolic kinds use closed forms; generic blocks use a
// scaling-and-squaring matrix exponential.  Throws NumericalFailure when an
// explicit evaluation would overflow (large hyperbolic iterates).
Mat evaluate(const PathSpec& p, double t, const Config& cfg);

// evaluate(p, 1): the end matrix of the path.
Mat end_matrix(const PathSpec& p, const Config& cfg);

// The m-th iterate t -> gamma(m * t) as a path spec.  Blocks are not
// rewritten (reducing a rotation angle mod 2*pi would change the path's
// homotopy class); only the multiplier changes.
PathSpec iterate(const PathSpec& p, std::int64_t m);

// True when the characteristic polynomial of M equals (lambda - 1)^dim
// within tol on each coefficient (coefficients via the Faddeev-LeVerrier
// recurrence).  A cheap certificate that M is unipotent.
bool has_unipotent_char_poly(const Mat& M, double tol);

} // namespace sympath
