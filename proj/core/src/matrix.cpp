#include "sympath/matrix.hpp"

#include <string>

#include "sympath/errors.hpp"

namespace sympath {

Mat symplectic_J(int n) {
    Mat J = Mat::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = -Mat::Identity(n, n);
    J.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    return J;
}

double symplectic_residual(const Mat& M) {
    if (M.rows() != M.cols() || M.rows() % 2 != 0) return 1.0;
    int n = static_cast<int>(M.rows()) / 2;
    Mat J = symplectic_J(n);
    return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

void check_symplectic(const Mat& M, double tol) {
    if (M.rows() != M.cols())
        throw ValidationError("matrix is not square");
    if (M.rows() % 2 != 0)
        throw ValidationError("matrix dimension is odd; symplectic matrices have even dimension");
    double r = symplectic_residual(M);
    if (!(r <= tol))
        throw ValidationError("matrix is not symplectic: residual " + std::to_string(r) +
                              " exceeds tolerance " + std::to_string(tol));
}

SymplecticMatrix SymplecticMatrix::checked(Mat M, double tol) {
    check_symplectic(M, tol);
    int n = static_cast<int>(M.rows()) / 2;
    return {std::move(M), n};
}

Mat direct_sum(const Mat& A, const Mat& B) {
    int a = static_cast<int>(A.rows()) / 2;
    int b = static_cast<int>(B.rows()) / 2;
    int n = a + b;
    Mat S = Mat::Zero(2 * n, 2 * n);
    // Index of the k-th coordinate of each summand inside the sum.
    auto mapA = [&](int i) { return i < a ? i : n + (i - a); };
    auto mapB = [&](int i) { return i < b ? a + i : n + a + (i - b); };
    for (int i = 0; i < 2 * a; ++i)
        for (int j = 0; j < 2 * a; ++j) S(mapA(i), mapA(j)) = A(i, j);
    for (int i = 0; i < 2 * b; ++i)
        for (int j = 0; j < 2 * b; ++j) S(mapB(i), mapB(j)) = B(i, j);
    return S;
}

} // namespace sympath
