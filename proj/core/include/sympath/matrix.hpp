#pragma once

#include <Eigen/Dense>

namespace sympath {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

// The standard symplectic form on R^{2n} in (p, q) coordinates:
// J = [[0, -I_n], [I_n, 0]].
Mat symplectic_J(int n);

// max-abs entry of M^T J M - J; 0 for an exactly symplectic matrix.
double symplectic_residual(const Mat& M);

// Throws ValidationError if M is not square of even dimension or the
// symplectic residual exceeds tol.
void check_symplectic(const Mat& M, double tol);

// A matrix that has passed the symplectic check, together with the half
// dimension n.
struct SymplecticMatrix {
    Mat m;
    int n = 0;
    static SymplecticMatrix checked(Mat M, double tol);
};

// Symplectic direct sum: A acts on (p_A, q_A), B on (p_B, q_B); the result
// acts on (p_A, p_B, q_A, q_B).  Plain block-diagonal stacking would break
// the (p, q) split, so rows/columns are interleaved accordingly.
Mat direct_sum(const Mat& A, const Mat& B);

} // namespace sympath
