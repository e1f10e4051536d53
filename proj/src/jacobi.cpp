#include "xproc/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "xproc/errors.hpp"

namespace xproc {

namespace {

void check_symmetric(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw SymmetryViolation("matrix is not square");
    const double scale = std::max(1.0, a.norm());
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw SymmetryViolation("matrix is not symmetric (max |a_ij - a_ji| = " + std::to_string(asym) + ")");
    }
}

double max_off_diagonal(const Eigen::MatrixXd& a) {
    double m = 0.0;
    for (Eigen::Index q = 1; q < a.cols(); ++q)
        for (Eigen::Index p = 0; p < q; ++p) m = std::max(m, std::abs(a(p, q)));
    return m;
}

SymmetricEigen sorted(Eigen::VectorXd values, const Eigen::MatrixXd& vectors, int sweeps) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return values[i] < values[j]; });
    SymmetricEigen out;
    out.values.resize(values.size());
    out.vectors.resize(vectors.rows(), vectors.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        out.values[idx] = values[order[k]];
        out.vectors.col(idx) = vectors.col(order[k]);
    }
    out.sweeps = sweeps;
    return out;
}

}  // namespace

SymmetricEigen jacobi_eigensolver(const Eigen::MatrixXd& input, double tolerance, int max_sweeps) {
    check_symmetric(input);
    const Eigen::Index n = input.rows();
    Eigen::MatrixXd a = 0.5 * (input + input.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double threshold = tolerance * a.norm();

    int sweep = 0;
    for (;; ++sweep) {
        const double off = max_off_diagonal(a);
        if (off <= threshold) break;
        if (sweep == max_sweeps) {
            throw ConvergenceFailure("Jacobi did not converge in " + std::to_string(max_sweeps) +
                                         " sweeps (max off-diagonal " + std::to_string(off) + ")",
                                     off);
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-3 * threshold) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (Eigen::Index k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    const double np = c * akp - s * akq;
                    const double nq = s * akp + c * akq;
                    a(k, p) = np;
                    a(p, k) = np;
                    a(k, q) = nq;
                    a(q, k) = nq;
                }
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    return sorted(a.diagonal(), v, sweep);
}

SymmetricEigen symmetric_eigensolver(const Eigen::MatrixXd& a) {
    if (a.rows() <= kJacobiMaxSize) return jacobi_eigensolver(a);
    check_symmetric(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()));
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("tridiagonal QR failed to converge", std::nan(""));
    }
    return sorted(solver.eigenvalues(), solver.eigenvectors(), 0);
}

}  // namespace xproc
