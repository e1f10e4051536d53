#pragma once

#include <Eigen/Dense>

namespace xproc {

struct SymmetricEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // Euclidean-orthonormal columns matching values
    int sweeps = 0;           // 0 when the fallback solver was used
};

// Cyclic Jacobi with row-by-row sweep order. Stops once the largest
// off-diagonal magnitude is <= tolerance * ||A||_F, or throws
// ConvergenceFailure after max_sweeps. Throws SymmetryViolation when A is
// not symmetric to 1e-12 * ||A||_F.
SymmetricEigen jacobi_eigensolver(const Eigen::MatrixXd& a, double tolerance = 1e-12, int max_sweeps = 100);

// Matrices larger than this go to Eigen's tridiagonal QR solver instead of
// Jacobi; both are deterministic.
inline constexpr Eigen::Index kJacobiMaxSize = 320;

SymmetricEigen symmetric_eigensolver(const Eigen::MatrixXd& a);

}  // namespace xproc
