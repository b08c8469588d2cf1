#pragma once

#include <vector>

#include "sympath/angle.hpp"
#include "sympath/config.hpp"
#include "sympath/matrix.hpp"

namespace sympath {

// One eigenvalue e^{i*theta} of a symplectic matrix lying on the unit
// circle, with its algebraic and geometric multiplicity.  theta and
// 2*pi - theta appear as separate entries unless theta is 0 or pi.
struct UnitEigenvalue {
    Angle angle;
    int alg_mult = 0;
    int geo_mult = 0;
};

// Complex nullity of M - omega*I, computed as the number of singular values
// below tol_rank relative to the largest one.
int nullity_at(const Mat& M, std::complex<double> omega, double tol_rank);

// All eigenvalues of M within cfg.tol_unit of the unit circle, grouped by
// angle (snapped to exact rational multiples of pi when detected), sorted
// by angle, with algebraic and geometric multiplicities.
std::vector<UnitEigenvalue> unit_spectrum(const Mat& M, const Config& cfg);

} // namespace sympath
