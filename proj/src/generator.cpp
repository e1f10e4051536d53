#include "xproc/generator.hpp"

#include <cstdio>
#include <ostream>

#include "xproc/errors.hpp"

namespace xproc {

double level_inner(const LevelFunction& f, const LevelFunction& g) {
    if (f.size() != g.size()) throw InvalidParameter("level_inner: dimension mismatch");
    if (f.size() == 0) return 0.0;
    return f.dot(g) / static_cast<double>(f.size());
}

LevelGenerator::LevelGenerator(Graph graph, LevelStateSpace space, Eigen::MatrixXd matrix)
    : graph_(std::move(graph)), space_(std::move(space)), matrix_(std::move(matrix)),
      fingerprint_(graph_.fingerprint()) {}

LevelGenerator build_level_generator(const Graph& g, int level) {
    return build_level_generator(g, level, state_cap());
}

LevelGenerator build_level_generator(const Graph& g, int level, std::uint64_t cap) {
    if (!is_connected(g)) throw DisconnectedGraph("generator requires a connected graph");
    LevelStateSpace space(g.n(), level, cap);
    const auto size = static_cast<Eigen::Index>(space.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        const std::uint64_t x = space.state(static_cast<std::size_t>(i));
        for (const auto& e : g.edges()) {
            const std::uint64_t y = swap_bits(x, e.u, e.v);
            if (y == x) continue;
            const auto j = static_cast<Eigen::Index>(space.index_of(y));
            m(i, j) -= e.rate;
            m(i, i) += e.rate;
        }
    }
    return LevelGenerator(g, std::move(space), std::move(m));
}

double dirichlet_form(const LevelGenerator& gen, const LevelFunction& f) {
    const auto& space = gen.space();
    if (static_cast<std::size_t>(f.size()) != space.size()) {
        throw InvalidParameter("dirichlet_form: function has " + std::to_string(f.size()) + " entries, level has " +
                               std::to_string(space.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const std::uint64_t x = space.state(i);
        for (const auto& e : gen.graph().edges()) {
            const std::uint64_t y = swap_bits(x, e.u, e.v);
            if (y == x) continue;
            const double d = f[static_cast<Eigen::Index>(i)] - f[static_cast<Eigen::Index>(space.index_of(y))];
            sum += e.rate * d * d;
        }
    }
    return 0.5 * sum / static_cast<double>(space.size());
}

double rayleigh_quotient(const LevelGenerator& gen, const LevelFunction& f) {
    const double norm = level_inner(f, f);
    if (!(norm > 0.0)) throw InvalidParameter("rayleigh_quotient of the zero function");
    return dirichlet_form(gen, f) / norm;
}

void write_matrix_csv(std::ostream& os, const LevelGenerator& gen) {
    const auto& space = gen.space();
    os << "state";
    for (auto w : space.states()) os << ',' << to_string(Configuration{w, space.n()});
    os << '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < gen.matrix().rows(); ++i) {
        os << to_string(Configuration{space.state(static_cast<std::size_t>(i)), space.n()});
        for (Eigen::Index j = 0; j < gen.matrix().cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", gen.matrix()(i, j));
            os << ',' << buf;
        }
        os << '\n';
    }
}

}  // namespace xproc
