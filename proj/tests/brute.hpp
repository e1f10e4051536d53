#pragma once

// Reference computations for the tests. They work from the definitions
// with plain loops and Eigen's own solvers, never through the library's
// enumeration, eigensolver or lifting code.

#include <bit>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "xproc/fourier.hpp"
#include "xproc/graph.hpp"

namespace brute {

inline std::vector<std::uint64_t> level_states(int n, int level) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
        if (std::popcount(x) == level) out.push_back(x);
    return out;
}

inline long index_in(const std::vector<std::uint64_t>& states, std::uint64_t x) {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == x) return static_cast<long>(i);
    return -1;
}

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// -Q on one level, straight from the swap rule.
inline Eigen::MatrixXd generator(const xproc::Graph& g, int level) {
    const auto states = level_states(g.n(), level);
    const auto m = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const std::uint64_t x = states[static_cast<std::size_t>(i)];
        for (const auto& e : g.edges()) {
            const bool bu = (x >> e.u) & 1u, bv = (x >> e.v) & 1u;
            if (bu == bv) continue;
            const std::uint64_t y = x ^ (std::uint64_t{1} << e.u) ^ (std::uint64_t{1} << e.v);
            const long j = index_in(states, y);
            q(i, j) -= e.rate;
            q(i, i) += e.rate;
        }
    }
    return q;
}

inline Eigen::VectorXd eigenvalues(const xproc::Graph& g, int level) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(generator(g, level));
    return es.eigenvalues();
}

inline double max_eigenvalue_all_levels(const xproc::Graph& g) {
    double m = 0.0;
    for (int l = 0; l <= g.n(); ++l) m = std::max(m, eigenvalues(g, l).maxCoeff());
    return m;
}

struct Bucket {
    double eigenvalue;
    double mass;
};

// Fourier mass of f per (level, eigenvalue), from Eigen's solver and the
// definition f^2 = P(level) * ||projection of f|level||_pi^2.
inline std::vector<Bucket> mass_buckets(const xproc::Graph& g, const xproc::BooleanFunction& f) {
    std::vector<Bucket> out;
    const int n = g.n();
    for (int l = 0; l <= n; ++l) {
        const auto states = level_states(n, l);
        Eigen::VectorXd fl(static_cast<Eigen::Index>(states.size()));
        for (std::size_t i = 0; i < states.size(); ++i) fl[static_cast<Eigen::Index>(i)] = f(states[i]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(generator(g, l));
        const double weight = binom(n, l) / std::ldexp(1.0, n);
        const double dim = static_cast<double>(states.size());
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const double c = es.eigenvectors().col(i).dot(fl);  // Euclidean unit vectors
            out.push_back({es.eigenvalues()[i], weight * c * c / dim});
        }
    }
    return out;
}

inline double mass_where(const std::vector<Bucket>& b, double lo_exclusive, double hi_inclusive) {
    double s = 0.0;
    for (const auto& x : b)
        if (x.eigenvalue > lo_exclusive && x.eigenvalue <= hi_inclusive) s += x.mass;
    return s;
}

// E[f(X_0) f(X_t)] under the uniform start, using Eigen's matrix exponential.
inline double correlation(const xproc::Graph& g, const xproc::BooleanFunction& f, double t) {
    const int n = g.n();
    double total = 0.0;
    for (int l = 0; l <= n; ++l) {
        const auto states = level_states(n, l);
        const Eigen::MatrixXd h = (-t * generator(g, l)).exp();
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = 0; j < states.size(); ++j)
                total += h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * f(states[i]) * f(states[j]);
    }
    return total / std::ldexp(1.0, n);
}

inline double mean(const xproc::BooleanFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s / static_cast<double>(f.values().size());
}

}  // namespace brute
