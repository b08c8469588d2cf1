#include "sympath/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>

namespace sympath {

int nullity_at(const Mat& M, std::complex<double> omega, double tol_rank) {
    CMat A = M.cast<std::complex<double>>();
    A.diagonal().array() -= omega;
    Eigen::JacobiSVD<CMat> svd(A);
    const auto& s = svd.singularValues();
    double smax = s.size() > 0 ? s(0) : 0.0;
    // An all-but-zero matrix: every direction is in the kernel.
    if (smax < 1e-300) return static_cast<int>(M.rows());
    int nz = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) < tol_rank * smax) ++nz;
    return nz;
}

std::vector<UnitEigenvalue> unit_spectrum(const Mat& M, const Config& cfg) {
    Eigen::EigenSolver<Mat> es(M);
    if (es.info() != Eigen::Success) return {};
    std::vector<UnitEigenvalue> out;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        std::complex<double> lam = es.eigenvalues()(i);
        if (std::abs(std::abs(lam) - 1.0) >= cfg.tol_unit) continue;
        double theta = std::arg(lam);
        if (theta < 0) theta += 2.0 * M_PI;
        Angle a = Angle::from_radians(theta, cfg);
        // Eigenvalues within tol_unit of each other belong to one angle class.
        auto it = std::find_if(out.begin(), out.end(), [&](const UnitEigenvalue& u) {
            return u.angle.approx_same(a, cfg.tol_unit * 10);
        });
        if (it == out.end()) {
            out.push_back({a, 1, 0});
        } else {
            ++it->alg_mult;
        }
    }
    for (auto& u : out) {
        std::complex<double> omega(std::cos(u.angle.radians()), std::sin(u.angle.radians()));
        u.geo_mult = nullity_at(M, omega, cfg.tol_rank);
    }
    std::sort(out.begin(), out.end(),
              [](const UnitEigenvalue& a, const UnitEigenvalue& b) { return a.angle < b.angle; });
    return out;
}

} // namespace sympath
