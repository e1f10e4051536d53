#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "xproc/diagnostics.hpp"
#include "xproc/dynamics.hpp"

namespace xproc {

// Named property checks. Each one sweeps a deterministic instance set and
// reports the worst residual; the verify suites and the acceptance binary
// are thin selections over these.

// Symmetry, zero row sums, nonpositive off-diagonal, Dirichlet form versus
// <-Qf, f> on random f.
CheckResult check_generator_invariants(const std::vector<Graph>& graphs, std::uint64_t seed);

// Residual, orthonormality and constant kernel column of eigendecompose.
CheckResult check_eigensolver(const std::vector<Graph>& graphs);

// K_n at each alpha: eigenvalues alpha j(n-j+1) with multiplicity
// binom(n,j) - binom(n,j-1), levels 0..n/2. Also the telescoping count.
// An empty `alphas` means {1, 1/n} for each n.
CheckResult check_complete_spectrum(int nmin, int nmax, const std::vector<double>& alphas);

// Both lift length formulas on K_n for every basis vector, n <= nmax.
CheckResult check_lift_lengths(int nmax, double alpha);

// lift_down / lift_up of every eigenvector is either ~0 or an eigenvector
// with the same eigenvalue one level over.
CheckResult check_lift_dichotomy(const std::vector<Graph>& graphs);

// Lifts of distinct K_n basis vectors stay orthogonal.
CheckResult check_orthogonality_preservation(int nmax, double alpha);

// Largest level eigenvalue <= 2 alpha l d on random connected graphs.
CheckResult check_eigenvalue_bound(int count, int nmax, std::uint64_t seed);

// Constant kernel projectors of cycle(n) and K_n coincide, every level.
CheckResult check_kernel_independence(int nmin, int nmax);

// Parseval, the mass decomposition identity, the flip/correlation identity,
// monotone correlation in t, and the bucketed agreement between the
// generic and explicit K_n bases.
CheckResult check_profile_identities(int count, int nmax, std::uint64_t seed);

// Spectral correlation against the matrix-exponential oracle.
CheckResult check_oracle_equivalence(int count, int nmax, std::uint64_t seed);

// containment_residual <= 1e-8 with alpha = 1/n, beta = 1/d, k' = 2k.
// Families: "cycle", "half_complete_cycle", "random".
CheckResult check_containment(const std::vector<int>& ns, const std::vector<std::string>& families,
                              std::uint64_t seed);

// rhs <= lhs + 1e-10 on random valid instances.
CheckResult check_projection_mass(int count, int nmin, int nmax, std::uint64_t seed);

// lhs <= rhs + 1e-10 on random (g, g', f, k, k') with g' a spanning
// subgraph of g.
CheckResult check_monotonicity(int count, const std::vector<int>& ns, std::uint64_t seed);

// Sorted level spectra nondecreasing along cycle(2h) < hcc(h) < K_2h at a
// common rate, for each h.
CheckResult check_spectrum_chain(const std::vector<int>& halves, double rate);

struct MonteCarloInstance {
    std::string label;
    Graph graph;
    std::string function;
    double t;
};

// The ten fixed instances on K_4, cycle(8) and half_complete_cycle(3).
std::vector<MonteCarloInstance> monte_carlo_instances();

// An instance passes when both the covariance and the flip-probability
// estimates sit within `se_multiple` standard errors of the exact values.
CheckResult check_monte_carlo(const std::vector<MonteCarloInstance>& instances, std::uint64_t samples,
                              std::uint64_t seed, double se_multiple);

// Suite names: generator, spectral, fourier, oracle, diagnostics,
// dynamics, all.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& suite, int nmax, std::uint64_t seed);

}  // namespace xproc
