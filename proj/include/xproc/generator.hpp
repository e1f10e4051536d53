#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

#include "xproc/graph.hpp"
#include "xproc/statespace.hpp"

namespace xproc {

// Functions on one level, indexed in LevelStateSpace order.
using LevelFunction = Eigen::VectorXd;

// pi^(l)-weighted inner product <f,g> = (1/|S|) sum f g. Eigenvectors in
// this library are normalized against it, so their Euclidean norm is sqrt|S|.
double level_inner(const LevelFunction& f, const LevelFunction& g);

// Dense -Q^(l) of the exclusion process restricted to one level. The stored
// matrix is positive semidefinite with zero row sums.
class LevelGenerator {
public:
    LevelGenerator(Graph graph, LevelStateSpace space, Eigen::MatrixXd matrix);

    const Graph& graph() const { return graph_; }
    const LevelStateSpace& space() const { return space_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    std::uint64_t graph_fingerprint() const { return fingerprint_; }
    std::size_t size() const { return space_.size(); }

private:
    Graph graph_;
    LevelStateSpace space_;
    Eigen::MatrixXd matrix_;
    std::uint64_t fingerprint_;
};

// Throws DisconnectedGraph, CapExceeded, InvalidParameter.
LevelGenerator build_level_generator(const Graph& g, int level);
LevelGenerator build_level_generator(const Graph& g, int level, std::uint64_t cap);

// <-Q f, f> evaluated through the edge sum
//   (1/|S|) sum_x sum_e rate(e) (f(x) - f(x_e))^2 / 2.
double dirichlet_form(const LevelGenerator& gen, const LevelFunction& f);

// <-Q f, f> / <f, f>. Throws InvalidParameter for f == 0.
double rayleigh_quotient(const LevelGenerator& gen, const LevelFunction& f);

// Row-major CSV dump in enumeration order, first line is the state labels.
void write_matrix_csv(std::ostream& os, const LevelGenerator& gen);

}  // namespace xproc
