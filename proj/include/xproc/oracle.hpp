#pragma once

#include <Eigen/Dense>

#include "xproc/fourier.hpp"
#include "xproc/generator.hpp"

namespace xproc {

// Brute-force ground truth. Nothing here touches an eigensolver, so a
// defect in the spectral path cannot cancel out against it.

// H_t = exp(tQ) on one level, rows indexed by the starting state.
struct TransitionMatrix {
    LevelStateSpace space;
    double t;
    Eigen::MatrixXd probs;
};

inline constexpr int kTaylorDegree = 18;

// Scaling and squaring: choose s with ||t(-Q)||_1 / 2^s <= 0.5, sum the
// Taylor series to kTaylorDegree, square s times. Entries >= -1e-12 are
// clamped to 0. Throws InvalidParameter for t < 0.
TransitionMatrix matrix_exponential(const LevelGenerator& gen, double t);

// sum_l P(l) sum_{x,y} pi^(l)(x) H_t(x,y) f(x) f(y), level by level.
double brute_force_correlation(const Graph& g, const BooleanFunction& f, double t);

}  // namespace xproc
