#pragma once

#include <vector>

#include <Eigen/Dense>

#include "xproc/generator.hpp"
#include "xproc/graph.hpp"
#include "xproc/statespace.hpp"

namespace xproc {

// Eigenvalues closer than kGroupRelTol * max(1, lambda) are one eigenspace.
inline constexpr double kGroupRelTol = 1e-8;
// Eigenvalues at or below this are treated as the kernel.
inline constexpr double kZeroTol = 1e-8;

inline bool same_eigenvalue(double a, double b) {
    return std::abs(a - b) <= kGroupRelTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
inline bool is_zero_eigenvalue(double lambda) { return lambda <= kZeroTol; }
// lambda <= k, with eigenvalues within grouping tolerance of k counted as equal.
inline bool at_most(double lambda, double k) { return lambda <= k + kGroupRelTol * std::max(1.0, std::abs(k)); }
inline bool at_least(double lambda, double k) { return lambda >= k - kGroupRelTol * std::max(1.0, std::abs(k)); }

// Orthonormal eigenbasis of -Q^(l). Vectors are columns, normalized in the
// pi^(l) inner product (Euclidean norm sqrt|S|). Column 0 is the constant 1
// with eigenvalue exactly 0.
struct SpectralBasis {
    int n = 0;
    int level = 0;
    Eigen::VectorXd eigenvalues;      // ascending
    Eigen::MatrixXd vectors;          // |S| x |S|
    std::vector<int> group_ids;       // eigenspace id per column, 0-based, ascending

    std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
    int group_count() const { return group_ids.empty() ? 0 : group_ids.back() + 1; }
    // Column indices belonging to one eigenspace.
    std::vector<Eigen::Index> group(int id) const;
    double group_eigenvalue(int id) const;
};

std::vector<int> group_eigenvalues(const Eigen::VectorXd& ascending);

// Flip each column so its first clearly nonzero coordinate is positive.
void fix_signs(Eigen::MatrixXd& vectors);

// Throws SymmetryViolation / ConvergenceFailure from the eigensolver.
SpectralBasis eigendecompose(const LevelGenerator& gen);

// psi_+ : level l -> level l-1, psi_+(x) = sum over empty sites v of psi(x_v).
LevelFunction lift_down(const LevelStateSpace& space, const LevelFunction& psi);

// psi_- : level l -> level l+1, psi_-(x) = sum over occupied sites v of psi(x_v).
LevelFunction lift_up(const LevelStateSpace& space, const LevelFunction& psi);

// psi(x) = sum over y <= x with |y| = m of psi_m(y), for x on `target_level`.
LevelFunction sum_lift(const LevelStateSpace& space, const LevelFunction& psi, int target_level);

// Explicit basis for K_n at rate alpha, built by lifting the level-(l-1)
// basis and completing with eigenvalue alpha*l*(n-l+1). Requires l <= n/2.
SpectralBasis complete_graph_basis(int n, int level, double alpha);

// Basis at level n-l from a basis at level l via x -> 1-x.
SpectralBasis mirror_basis(const SpectralBasis& b);

// Bases for every level 0..n of g; levels above n/2 are mirrored from below.
std::vector<SpectralBasis> decompose_all_levels(const Graph& g);

// pi-orthogonal projector onto the span of the given columns, in the
// Euclidean coordinates of the level: P = V V^T / |S|.
Eigen::MatrixXd span_projector(const SpectralBasis& b, const std::vector<Eigen::Index>& columns);
Eigen::MatrixXd eigenspace_projector(const SpectralBasis& b, int group_id);

// Largest entrywise difference between matching eigenspace projectors of two
// bases of the same level. Eigenspaces are matched by eigenvalue; a
// mismatched spectrum yields +infinity.
double max_projector_difference(const SpectralBasis& a, const SpectralBasis& b);

// Max over columns of ||(-Q) psi - lambda psi||_2.
double max_residual(const LevelGenerator& gen, const SpectralBasis& b);
// Max |<psi_i, psi_j>_pi - delta_ij|.
double orthonormality_error(const SpectralBasis& b);

}  // namespace xproc
