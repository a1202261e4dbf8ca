#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Eigenvalues>

#include "errors.hpp"
#include "stability.hpp"

// Eigenvalue-based root location, kept out of the umbrella header: it pulls
// in Eigen and exists to cross-check schur_cohn, not to serve callers.

namespace sica {

inline std::vector<std::complex<double>> companion_roots(const Polynomial& poly) {
    const std::size_t k = poly.degree();
    if (k < 1) throw InvalidParams("companion_roots requires degree >= 1");
    Eigen::MatrixXd cm = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i + 1 < k; ++i) cm(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < k; ++i) cm(i, k - 1) = -poly.c[k - 1 - i];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(cm, false);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("companion-matrix eigensolver did not converge");
    std::vector<std::complex<double>> roots(k);
    for (std::size_t i = 0; i < k; ++i) roots[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return roots;
}

// Root-location verdict straight from the computed root moduli, with the
// same Borderline band as schur_cohn.
inline DiskVerdict roots_inside_unit_disk_oracle(const Polynomial& poly) {
    bool outside = false;
    bool borderline = false;
    for (const auto& z : companion_roots(poly)) {
        const double r = std::abs(z);
        if (std::abs(r - 1.0) <= kBorderlineTol) borderline = true;
        else if (r > 1.0) outside = true;
    }
    if (borderline) return DiskVerdict::Borderline;
    return outside ? DiskVerdict::Outside : DiskVerdict::Inside;
}

} // namespace sica
