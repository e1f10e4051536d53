#include "xproc/oracle.hpp"

#include <cmath>

#include "xproc/errors.hpp"

namespace xproc {

TransitionMatrix matrix_exponential(const LevelGenerator& gen, double t) {
    if (!(t >= 0.0)) throw InvalidParameter("matrix_exponential: t must be nonnegative");
    const Eigen::Index dim = gen.matrix().rows();
    // tQ = -t * (stored -Q)
    Eigen::MatrixXd a = -t * gen.matrix();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    a /= std::ldexp(1.0, squarings);

    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(dim, dim);
    for (int k = 1; k <= kTaylorDegree; ++k) {
        term = term * a / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;

    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            if (result(i, j) < 0.0 && result(i, j) >= -1e-12) result(i, j) = 0.0;
    return {gen.space(), t, std::move(result)};
}

double brute_force_correlation(const Graph& g, const BooleanFunction& f, double t) {
    if (f.n() != g.n()) throw InvalidParameter("function and graph have different vertex counts");
    const double total_states = std::ldexp(1.0, g.n());
    double sum = 0.0;
    for (int level = 0; level <= g.n(); ++level) {
        const auto gen = build_level_generator(g, level);
        const auto h = matrix_exponential(gen, t);
        const LevelFunction fl = f.restrict_to(gen.space());
        // P(l) * pi^(l)(x) = 2^-n for every x on the level.
        sum += fl.dot(h.probs * fl) / total_states;
    }
    return sum;
}

}  // namespace xproc
