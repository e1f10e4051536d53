#include "xproc/spectral.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "xproc/errors.hpp"
#include "xproc/jacobi.hpp"

namespace xproc {

namespace {

std::uint64_t full_mask(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void require_size(const LevelStateSpace& space, const LevelFunction& psi, const char* what) {
    if (static_cast<std::size_t>(psi.size()) != space.size()) {
        throw InvalidParameter(std::string(what) + ": function has " + std::to_string(psi.size()) +
                               " entries, level has " + std::to_string(space.size()));
    }
}

SpectralBasis finish_basis(int n, int level, Eigen::VectorXd values, Eigen::MatrixXd vectors) {
    fix_signs(vectors);
    SpectralBasis b;
    b.n = n;
    b.level = level;
    b.group_ids = group_eigenvalues(values);
    b.eigenvalues = std::move(values);
    b.vectors = std::move(vectors);
    return b;
}

}  // namespace

std::vector<Eigen::Index> SpectralBasis::group(int id) const {
    std::vector<Eigen::Index> cols;
    for (std::size_t i = 0; i < group_ids.size(); ++i)
        if (group_ids[i] == id) cols.push_back(static_cast<Eigen::Index>(i));
    return cols;
}

double SpectralBasis::group_eigenvalue(int id) const {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < group_ids.size(); ++i) {
        if (group_ids[i] == id) {
            sum += eigenvalues[static_cast<Eigen::Index>(i)];
            ++count;
        }
    }
    return count ? sum / count : std::nan("");
}

std::vector<int> group_eigenvalues(const Eigen::VectorXd& ascending) {
    std::vector<int> ids(static_cast<std::size_t>(ascending.size()));
    int id = 0;
    for (Eigen::Index i = 0; i < ascending.size(); ++i) {
        if (i > 0 && !same_eigenvalue(ascending[i], ascending[i - 1])) ++id;
        ids[static_cast<std::size_t>(i)] = id;
    }
    return ids;
}

void fix_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        auto col = vectors.col(j);
        const double scale = col.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < col.size(); ++i) {
            if (std::abs(col[i]) > 1e-8 * scale) {
                if (col[i] < 0.0) col = -col;
                break;
            }
        }
    }
}

SpectralBasis eigendecompose(const LevelGenerator& gen) {
    const auto& space = gen.space();
    const auto size = static_cast<Eigen::Index>(space.size());
    SymmetricEigen eig = symmetric_eigensolver(gen.matrix());
    Eigen::MatrixXd vectors = eig.vectors * std::sqrt(static_cast<double>(size));
    // Connected graph: the kernel on a level is exactly the constants.
    eig.values[0] = 0.0;
    vectors.col(0).setOnes();
    return finish_basis(space.n(), space.level(), std::move(eig.values), std::move(vectors));
}

LevelFunction lift_down(const LevelStateSpace& space, const LevelFunction& psi) {
    require_size(space, psi, "lift_down");
    if (space.level() < 1) throw InvalidParameter("lift_down needs a level >= 1");
    LevelStateSpace target(space.n(), space.level() - 1, std::numeric_limits<std::uint64_t>::max());
    LevelFunction out = LevelFunction::Zero(static_cast<Eigen::Index>(target.size()));
    const std::uint64_t mask = full_mask(space.n());
    for (std::size_t i = 0; i < target.size(); ++i) {
        const std::uint64_t x = target.state(i);
        double sum = 0.0;
        for (std::uint64_t empty = ~x & mask; empty; empty &= empty - 1) {
            const std::uint64_t y = x | (empty & (~empty + 1));
            sum += psi[static_cast<Eigen::Index>(space.index_of(y))];
        }
        out[static_cast<Eigen::Index>(i)] = sum;
    }
    return out;
}

LevelFunction lift_up(const LevelStateSpace& space, const LevelFunction& psi) {
    require_size(space, psi, "lift_up");
    if (space.level() >= space.n()) throw InvalidParameter("lift_up needs a level <= n-1");
    LevelStateSpace target(space.n(), space.level() + 1, std::numeric_limits<std::uint64_t>::max());
    LevelFunction out = LevelFunction::Zero(static_cast<Eigen::Index>(target.size()));
    for (std::size_t i = 0; i < target.size(); ++i) {
        const std::uint64_t x = target.state(i);
        double sum = 0.0;
        for (std::uint64_t occupied = x; occupied; occupied &= occupied - 1) {
            const std::uint64_t bit = occupied & (~occupied + 1);
            const std::uint64_t y = x & ~bit;
            sum += psi[static_cast<Eigen::Index>(space.index_of(y))];
        }
        out[static_cast<Eigen::Index>(i)] = sum;
    }
    return out;
}

LevelFunction sum_lift(const LevelStateSpace& space, const LevelFunction& psi, int target_level) {
    require_size(space, psi, "sum_lift");
    const int m = space.level();
    if (target_level <= m || target_level > space.n()) {
        throw InvalidParameter("sum_lift needs source level < target level <= n");
    }
    LevelStateSpace target(space.n(), target_level, std::numeric_limits<std::uint64_t>::max());
    LevelFunction out = LevelFunction::Zero(static_cast<Eigen::Index>(target.size()));
    std::vector<int> sites(static_cast<std::size_t>(target_level));
    for (std::size_t i = 0; i < target.size(); ++i) {
        const std::uint64_t x = target.state(i);
        int k = 0;
        for (std::uint64_t w = x; w; w &= w - 1) sites[static_cast<std::size_t>(k++)] = std::countr_zero(w);
        double sum = 0.0;
        if (m == 0) {
            sum = psi[0];
        } else {
            // Walk the m-subsets of the occupied sites (Gosper over site indices).
            const std::uint64_t limit = std::uint64_t{1} << target_level;
            for (std::uint64_t pick = (std::uint64_t{1} << m) - 1; pick < limit;) {
                std::uint64_t y = 0;
                for (std::uint64_t p = pick; p; p &= p - 1) y |= std::uint64_t{1} << sites[static_cast<std::size_t>(std::countr_zero(p))];
                sum += psi[static_cast<Eigen::Index>(space.index_of(y))];
                const std::uint64_t c = pick & (~pick + 1);
                const std::uint64_t r = pick + c;
                pick = (((r ^ pick) >> 2) / c) | r;
            }
        }
        out[static_cast<Eigen::Index>(i)] = sum;
    }
    return out;
}

SpectralBasis complete_graph_basis(int n, int level, double alpha) {
    if (n < 2) throw InvalidParameter("complete_graph_basis needs n >= 2");
    if (!(alpha > 0.0)) throw InvalidParameter("rate must be positive");
    if (level < 0) throw InvalidParameter("level must be nonnegative");
    if (2 * level > n) {
        throw InvalidParameter("complete_graph_basis covers levels <= n/2; use mirror_basis of level " +
                               std::to_string(n - level));
    }
    const std::uint64_t cap = state_cap();
    LevelStateSpace space(n, 0, cap);
    Eigen::VectorXd values = Eigen::VectorXd::Zero(1);
    Eigen::MatrixXd vectors = Eigen::MatrixXd::Ones(1, 1);

    for (int m = 1; m <= level; ++m) {
        LevelStateSpace next(n, m, cap);
        const auto dim = static_cast<Eigen::Index>(next.size());
        const auto lifted = vectors.cols();
        Eigen::MatrixXd basis(dim, dim);
        Eigen::VectorXd eig(dim);
        for (Eigen::Index j = 0; j < lifted; ++j) {
            LevelFunction up = lift_up(space, vectors.col(j));
            basis.col(j) = up / std::sqrt(level_inner(up, up));
            eig[j] = values[j];
        }
        // Orthonormal complement by Gram-Schmidt over coordinate vectors; the
        // complement is the top eigenspace alpha*m*(n-m+1).
        const double top = alpha * m * (n - m + 1);
        const double scale = static_cast<double>(dim);
        Eigen::Index filled = lifted;
        for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
            Eigen::VectorXd r = Eigen::VectorXd::Unit(dim, e);
            for (int pass = 0; pass < 2; ++pass) {
                auto cur = basis.leftCols(filled);
                r -= cur * (cur.transpose() * r) / scale;
            }
            const double norm2 = level_inner(r, r);
            if (norm2 <= 1e-6 / scale) continue;
            basis.col(filled) = r / std::sqrt(norm2);
            eig[filled] = top;
            ++filled;
        }
        if (filled != dim) throw ConvergenceFailure("complement construction lost rank", 0.0);
        vectors = std::move(basis);
        values = std::move(eig);
        space = std::move(next);
    }
    return finish_basis(n, level, std::move(values), std::move(vectors));
}

SpectralBasis mirror_basis(const SpectralBasis& b) {
    const int n = b.n;
    LevelStateSpace source(n, b.level, std::numeric_limits<std::uint64_t>::max());
    LevelStateSpace target(n, n - b.level, std::numeric_limits<std::uint64_t>::max());
    const std::uint64_t mask = full_mask(n);
    Eigen::MatrixXd vectors(b.vectors.rows(), b.vectors.cols());
    for (std::size_t i = 0; i < target.size(); ++i) {
        const auto src = static_cast<Eigen::Index>(source.index_of(~target.state(i) & mask));
        vectors.row(static_cast<Eigen::Index>(i)) = b.vectors.row(src);
    }
    return finish_basis(n, n - b.level, b.eigenvalues, std::move(vectors));
}

std::vector<SpectralBasis> decompose_all_levels(const Graph& g) {
    const int n = g.n();
    std::vector<SpectralBasis> bases(static_cast<std::size_t>(n + 1));
    for (int level = 0; 2 * level <= n; ++level) {
        bases[static_cast<std::size_t>(level)] = eigendecompose(build_level_generator(g, level));
    }
    for (int level = n / 2 + 1; level <= n; ++level) {
        bases[static_cast<std::size_t>(level)] = mirror_basis(bases[static_cast<std::size_t>(n - level)]);
    }
    return bases;
}

Eigen::MatrixXd span_projector(const SpectralBasis& b, const std::vector<Eigen::Index>& columns) {
    const auto dim = b.vectors.rows();
    Eigen::MatrixXd v(dim, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = b.vectors.col(columns[k]);
    return v * v.transpose() / static_cast<double>(dim);
}

Eigen::MatrixXd eigenspace_projector(const SpectralBasis& b, int group_id) {
    return span_projector(b, b.group(group_id));
}

double max_projector_difference(const SpectralBasis& a, const SpectralBasis& b) {
    if (a.n != b.n || a.level != b.level || a.size() != b.size() || a.group_count() != b.group_count()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (int g = 0; g < a.group_count(); ++g) {
        if (!same_eigenvalue(a.group_eigenvalue(g), b.group_eigenvalue(g)) || a.group(g).size() != b.group(g).size()) {
            return std::numeric_limits<double>::infinity();
        }
        worst = std::max(worst, (eigenspace_projector(a, g) - eigenspace_projector(b, g)).cwiseAbs().maxCoeff());
    }
    return worst;
}

double max_residual(const LevelGenerator& gen, const SpectralBasis& b) {
    const Eigen::MatrixXd r = gen.matrix() * b.vectors - b.vectors * b.eigenvalues.asDiagonal();
    return r.colwise().norm().maxCoeff();
}

double orthonormality_error(const SpectralBasis& b) {
    const auto dim = static_cast<double>(b.vectors.rows());
    const Eigen::MatrixXd gram = b.vectors.transpose() * b.vectors / dim;
    return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace xproc
