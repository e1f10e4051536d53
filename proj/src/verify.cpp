#include "xproc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "xproc/errors.hpp"
#include "xproc/generator.hpp"
#include "xproc/oracle.hpp"
#include "xproc/spectral.hpp"

namespace xproc {

namespace {

using nlohmann::json;

CheckResult named(const std::string& name) {
    CheckResult c;
    c.name = name;
    return c;
}

// Checks draw from their own stream so adding one does not perturb another.
Engine check_engine(std::uint64_t seed, std::uint64_t tag) { return sample_engine(seed, 0x5eed0000u + tag); }

double uniform(Engine& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Engine& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

BooleanFunction random_boolean(int n, Engine& rng) {
    std::vector<double> v(std::size_t{1} << n);
    std::bernoulli_distribution coin(0.5);
    for (auto& x : v) x = coin(rng) ? 1.0 : 0.0;
    return BooleanFunction(n, std::move(v), "random");
}

Graph randomize_rates(const Graph& g, Engine& rng) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.rate = uniform(rng, 0.2, 2.0);
    return Graph(g.n(), std::move(edges));
}

Graph random_graph(int n, Engine& rng, double rate) {
    return make_random_connected(n, uniform(rng, 0.2, 0.8), rate, rng());
}

// Drops edges at random while the graph stays connected.
Graph random_spanning_subgraph(const Graph& g, Engine& rng) {
    std::vector<Edge> edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    std::bernoulli_distribution drop(0.5);
    for (std::size_t i = 0; i < edges.size();) {
        if (edges.size() > 1 && drop(rng)) {
            std::vector<Edge> trial = edges;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            if (is_connected(Graph(g.n(), trial))) {
                edges = std::move(trial);
                continue;
            }
        }
        ++i;
    }
    return Graph(g.n(), std::move(edges));
}

double pi_norm(const LevelFunction& f) { return std::sqrt(level_inner(f, f)); }

json graph_tag(const Graph& g) { return {{"n", g.n()}, {"edges", g.edge_count()}, {"fingerprint", g.fingerprint()}}; }

std::vector<Graph> standard_graphs(int nmax, std::uint64_t seed) {
    Engine rng = check_engine(seed, 1);
    std::vector<Graph> out;
    for (int n = 2; n <= nmax; ++n) {
        out.push_back(make_complete(n, 1.0 / n));
        if (n >= 3) out.push_back(make_cycle(n, 1.0));
        if (n >= 4 && n % 2 == 0) out.push_back(make_half_complete_cycle(n / 2, 0.5));
        out.push_back(randomize_rates(random_graph(n, rng, 1.0), rng));
    }
    return out;
}

}  // namespace

CheckResult check_generator_invariants(const std::vector<Graph>& graphs, std::uint64_t seed) {
    CheckResult c = named("generator_invariants");
    Engine rng = check_engine(seed, 2);
    for (const Graph& g : graphs) {
        for (int level = 0; level <= g.n(); ++level) {
            const LevelGenerator gen = build_level_generator(g, level);
            const Eigen::MatrixXd& a = gen.matrix();
            const auto& space = gen.space();
            double worst = (a - a.transpose()).cwiseAbs().maxCoeff();
            worst = std::max(worst, a.rowwise().sum().cwiseAbs().maxCoeff());
            for (Eigen::Index i = 0; i < a.rows(); ++i) {
                double diag = 0.0;
                for (const Edge& e : g.edges())
                    if (((space.state(static_cast<std::size_t>(i)) >> e.u) ^ (space.state(static_cast<std::size_t>(i)) >> e.v)) & 1u)
                        diag += e.rate;
                worst = std::max(worst, std::abs(a(i, i) - diag));
                for (Eigen::Index j = 0; j < a.cols(); ++j)
                    if (i != j) worst = std::max(worst, std::max(0.0, a(i, j)));
            }
            LevelFunction f(a.rows());
            for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = uniform(rng, -1.0, 1.0);
            const double quad = f.dot(a * f) / static_cast<double>(f.size());
            const double df = dirichlet_form(gen, f);
            worst = std::max(worst, std::abs(quad - df) / std::max(1.0, std::abs(quad)));
            const double scale = std::max(1.0, g.total_rate());
            c.record(worst <= 1e-12 * scale, worst, {{"graph", graph_tag(g)}, {"level", level}});
        }
    }
    return c;
}

CheckResult check_eigensolver(const std::vector<Graph>& graphs) {
    CheckResult c = named("eigensolver_residuals");
    for (const Graph& g : graphs) {
        for (int level = 0; 2 * level <= g.n(); ++level) {
            const LevelGenerator gen = build_level_generator(g, level);
            const SpectralBasis b = eigendecompose(gen);
            const double scale = std::max(1.0, b.eigenvalues.cwiseAbs().maxCoeff());
            const double dim = static_cast<double>(b.size());
            const double resid = max_residual(gen, b) / std::sqrt(dim) / scale;
            const double ortho = orthonormality_error(b);
            double kernel = std::abs(b.eigenvalues[0]);
            kernel = std::max(kernel, (b.vectors.col(0).array() - 1.0).abs().maxCoeff());
            const double negative = std::max(0.0, -b.eigenvalues.minCoeff());
            const bool ok = resid <= 1e-10 && ortho <= 1e-10 && kernel == 0.0 && negative <= 1e-10 * scale;
            c.record(ok, std::max({resid, ortho, kernel, negative}), {{"graph", graph_tag(g)}, {"level", level}});
        }
    }
    return c;
}

CheckResult check_complete_spectrum(int nmin, int nmax, const std::vector<double>& alphas) {
    CheckResult c = named("complete_graph_multiplicities");
    for (int n = std::max(2, nmin); n <= nmax; ++n) {
        const std::vector<double> rates = alphas.empty() ? std::vector<double>{1.0, 1.0 / n} : alphas;
        for (double alpha : rates) {
            const Graph kn = make_complete(n, alpha);
            for (int level = 0; 2 * level <= n; ++level) {
                const SpectralBasis b = eigendecompose(build_level_generator(kn, level));
                std::vector<double> expected;
                std::uint64_t count = 1;
                expected.push_back(0.0);
                for (int j = 1; j <= level; ++j) {
                    const std::uint64_t mult = binomial(n, j) - binomial(n, j - 1);
                    count += mult;
                    expected.insert(expected.end(), mult, alpha * j * (n - j + 1));
                }
                double worst = count == binomial(n, level) ? 0.0 : 1.0;
                if (expected.size() != b.size()) worst = std::numeric_limits<double>::infinity();
                else
                    for (std::size_t i = 0; i < expected.size(); ++i)
                        worst = std::max(worst, std::abs(b.eigenvalues[static_cast<Eigen::Index>(i)] - expected[i]) /
                                                    std::max(1.0, expected[i]));
                if (b.group_count() != level + 1) worst = std::max(worst, 1.0);
                c.record(worst <= 1e-8, worst, {{"n", n}, {"alpha", alpha}, {"level", level}});
            }
        }
    }
    return c;
}

CheckResult check_lift_lengths(int nmax, double alpha) {
    CheckResult c = named("lift_length_formulas");
    for (int n = 2; n <= nmax; ++n) {
        const Graph kn = make_complete(n, alpha);
        for (int level = 0; 2 * level <= n; ++level) {
            const LevelGenerator gen = build_level_generator(kn, level);
            const SpectralBasis b = eigendecompose(gen);
            double worst = 0.0;
            for (Eigen::Index i = 0; i < b.vectors.cols(); ++i) {
                const LevelFunction psi = b.vectors.col(i);
                const double lambda = b.eigenvalues[i];
                if (level >= 1) {
                    const LevelFunction down = lift_down(gen.space(), psi);
                    const double want = (n - level + 1) / (alpha * level) * (alpha * level * (n - level + 1) - lambda);
                    worst = std::max(worst, std::abs(level_inner(down, down) - want) / std::max(1.0, std::abs(want)));
                }
                if (level <= n - 1) {
                    const LevelFunction up = lift_up(gen.space(), psi);
                    const double want = (level + 1) / (alpha * (n - level)) * (alpha * (level + 1) * (n - level) - lambda);
                    worst = std::max(worst, std::abs(level_inner(up, up) - want) / std::max(1.0, std::abs(want)));
                }
            }
            c.record(worst <= 1e-8, worst, {{"n", n}, {"level", level}, {"alpha", alpha}});
        }
    }
    return c;
}

CheckResult check_lift_dichotomy(const std::vector<Graph>& graphs) {
    CheckResult c = named("lift_eigenvector_or_zero");
    for (const Graph& g : graphs) {
        const int n = g.n();
        std::vector<LevelGenerator> gens;
        for (int level = 0; level <= n; ++level) gens.push_back(build_level_generator(g, level));
        for (int level = 0; 2 * level <= n; ++level) {
            const SpectralBasis b = eigendecompose(gens[static_cast<std::size_t>(level)]);
            double worst = 0.0;
            auto judge = [&](const LevelFunction& lifted, const LevelGenerator& target, double lambda) {
                const double norm = pi_norm(lifted);
                if (norm <= 1e-8) return;
                const LevelFunction r = target.matrix() * lifted - lambda * lifted;
                worst = std::max(worst, pi_norm(r) / norm / std::max(1.0, lambda));
            };
            for (Eigen::Index i = 0; i < b.vectors.cols(); ++i) {
                const LevelFunction psi = b.vectors.col(i);
                if (level >= 1) judge(lift_down(gens[static_cast<std::size_t>(level)].space(), psi),
                                      gens[static_cast<std::size_t>(level - 1)], b.eigenvalues[i]);
                if (level <= n - 1) judge(lift_up(gens[static_cast<std::size_t>(level)].space(), psi),
                                          gens[static_cast<std::size_t>(level + 1)], b.eigenvalues[i]);
            }
            c.record(worst <= 1e-8, worst, {{"graph", graph_tag(g)}, {"level", level}});
        }
    }
    return c;
}

CheckResult check_orthogonality_preservation(int nmax, double alpha) {
    CheckResult c = named("lift_orthogonality");
    for (int n = 2; n <= nmax; ++n) {
        const Graph kn = make_complete(n, alpha);
        for (int level = 0; 2 * level <= n; ++level) {
            const LevelGenerator gen = build_level_generator(kn, level);
            const SpectralBasis b = eigendecompose(gen);
            double worst = 0.0;
            auto gram_off = [&](const Eigen::MatrixXd& lifted) {
                const Eigen::MatrixXd gram = lifted.transpose() * lifted / static_cast<double>(lifted.rows());
                for (Eigen::Index i = 0; i < gram.rows(); ++i)
                    for (Eigen::Index j = 0; j < gram.cols(); ++j)
                        if (i != j) worst = std::max(worst, std::abs(gram(i, j)));
            };
            const auto cols = b.vectors.cols();
            if (level <= n - 1) {
                Eigen::MatrixXd up(static_cast<Eigen::Index>(binomial(n, level + 1)), cols);
                for (Eigen::Index i = 0; i < cols; ++i) up.col(i) = lift_up(gen.space(), b.vectors.col(i));
                gram_off(up);
            }
            if (level >= 1) {
                Eigen::MatrixXd down(static_cast<Eigen::Index>(binomial(n, level - 1)), cols);
                for (Eigen::Index i = 0; i < cols; ++i) down.col(i) = lift_down(gen.space(), b.vectors.col(i));
                gram_off(down);
            }
            c.record(worst <= 1e-10, worst, {{"n", n}, {"level", level}});
        }
    }
    return c;
}

CheckResult check_eigenvalue_bound(int count, int nmax, std::uint64_t seed) {
    CheckResult c = named("eigenvalue_bound");
    Engine rng = check_engine(seed, 3);
    for (int i = 0; i < count; ++i) {
        const int n = uniform_int(rng, 2, nmax);
        const double rate = uniform(rng, 0.1, 2.0);
        const Graph g = random_graph(n, rng, rate);
        const int d = max_degree(g);
        double worst = 0.0;
        bool ok = true;
        for (int level = 1; level < n; ++level) {
            const SpectralBasis b = eigendecompose(build_level_generator(g, level));
            const double bound = 2.0 * rate * level * d;
            const double excess = b.eigenvalues.maxCoeff() - bound;
            worst = std::max(worst, excess / bound);
            if (excess > 1e-10 * bound) ok = false;
        }
        c.record(ok, std::max(0.0, worst), {{"graph", graph_tag(g)}, {"rate", rate}});
    }
    return c;
}

CheckResult check_kernel_independence(int nmin, int nmax) {
    CheckResult c = named("kernel_independence");
    for (int n = std::max(3, nmin); n <= nmax; ++n) {
        const Graph cyc = make_cycle(n, 1.0);
        const Graph kn = make_complete(n, 1.0 / n);
        for (int level = 0; level <= n; ++level) {
            const SpectralBasis a = eigendecompose(build_level_generator(cyc, level));
            const SpectralBasis b = eigendecompose(build_level_generator(kn, level));
            const bool single = a.group(0).size() == 1 && b.group(0).size() == 1;
            const double diff = (eigenspace_projector(a, 0) - eigenspace_projector(b, 0)).cwiseAbs().maxCoeff();
            c.record(single && diff <= 1e-12, single ? diff : std::numeric_limits<double>::infinity(),
                     {{"n", n}, {"level", level}});
        }
    }
    return c;
}

CheckResult check_profile_identities(int count, int nmax, std::uint64_t seed) {
    CheckResult c = named("profile_identities");
    Engine rng = check_engine(seed, 4);
    const int top = std::min(nmax, 8);
    for (int i = 0; i < count; ++i) {
        const int n = uniform_int(rng, 2, top);
        const Graph g = randomize_rates(random_graph(n, rng, 1.0), rng);
        const BooleanFunction f = random_boolean(n, rng);
        const SpectralProfile p = spectral_profile(f, decompose_all_levels(g));
        double worst = std::abs(p.total_mass - f.second_moment());

        // Conditional means by direct averaging over each level.
        double by_level = 0.0;
        for (int level = 0; level <= n; ++level) {
            const LevelStateSpace space = enumerate_level(n, level);
            double sum = 0.0;
            for (auto x : space.states()) sum += f(x);
            const double cond = sum / static_cast<double>(space.size());
            by_level += static_cast<double>(space.size()) / std::ldexp(1.0, n) * cond * cond;
        }
        worst = std::max(worst, std::abs(zero_mass(p) - by_level));
        worst = std::max(worst, std::abs(zero_mass(p) - p.mean * p.mean - p.conditional_mean_variance));

        double lam_max = 0.0;
        for (const auto& e : p.entries) lam_max = std::max(lam_max, e.eigenvalue);
        const double k = uniform(rng, 1e-3, 1.2 * lam_max + 1.0);
        worst = std::max(worst, std::abs(low_frequency_mass_strict(p, k) + tail_mass(p, k) + zero_mass(p) - p.total_mass));
        worst = std::max(worst, std::abs(low_frequency_mass(p, k) + mass_above(p, k) + zero_mass(p) - p.total_mass));

        const double eps = uniform(rng, 0.0, 2.0);
        const double flip = exact_flip_probability(p, eps);
        const double identity = std::abs(flip - 2.0 * (exact_correlation(p, 0.0) - exact_correlation(p, eps)));
        bool ok = worst <= 1e-10 && identity <= 1e-12 && flip >= 0.0 && flip <= 1.0;

        double prev = exact_correlation(p, 0.0);
        for (double t = 0.25; t <= 4.0; t += 0.25) {
            const double cur = exact_correlation(p, t);
            if (cur > prev + 1e-14) ok = false;
            prev = cur;
        }
        c.record(ok, std::max(worst, identity), {{"graph", graph_tag(g)}, {"k", k}, {"eps", eps}});
    }

    // Explicit K_n bases against the generic solver, bucketed by eigenvalue.
    for (int n = 2; n <= top; ++n) {
        const double alpha = 1.0 / n;
        const BooleanFunction f = random_boolean(n, rng);
        std::vector<SpectralBasis> explicit_bases(static_cast<std::size_t>(n + 1));
        for (int level = 0; 2 * level <= n; ++level)
            explicit_bases[static_cast<std::size_t>(level)] = complete_graph_basis(n, level, alpha);
        for (int level = n / 2 + 1; level <= n; ++level)
            explicit_bases[static_cast<std::size_t>(level)] = mirror_basis(explicit_bases[static_cast<std::size_t>(n - level)]);
        const auto a = mass_by_eigenvalue(spectral_profile(f, explicit_bases));
        const auto b = mass_by_eigenvalue(spectral_profile(f, decompose_all_levels(make_complete(n, alpha))));
        double worst = a.size() == b.size() ? 0.0 : std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (!same_eigenvalue(a[i].eigenvalue, b[i].eigenvalue)) worst = std::numeric_limits<double>::infinity();
            else worst = std::max(worst, std::abs(a[i].mass - b[i].mass));
        }
        c.record(worst <= 1e-8, worst, {{"complete_n", n}});
    }
    return c;
}

CheckResult check_oracle_equivalence(int count, int nmax, std::uint64_t seed) {
    CheckResult c = named("oracle_equivalence");
    Engine rng = check_engine(seed, 5);
    for (int i = 0; i < count; ++i) {
        const int n = uniform_int(rng, 2, nmax);
        const Graph g = randomize_rates(random_graph(n, rng, 1.0), rng);
        const BooleanFunction f = random_boolean(n, rng);
        const double t = uniform(rng, 0.0, 3.0);
        const double spectral = exact_correlation(spectral_profile(f, decompose_all_levels(g)), t);
        const double brute = brute_force_correlation(g, f, t);
        const double diff = std::abs(spectral - brute);
        c.record(diff <= 1e-8, diff, {{"graph", graph_tag(g)}, {"t", t}});
    }
    return c;
}

CheckResult check_containment(const std::vector<int>& ns, const std::vector<std::string>& families,
                              std::uint64_t seed) {
    CheckResult c = named("containment_residual");
    Engine rng = check_engine(seed, 6);
    for (int n : ns) {
        const Graph kn = make_complete(n, 1.0 / n);
        std::vector<SpectralBasis> complete(static_cast<std::size_t>(n + 1));
        for (int level = 0; 2 * level <= n; ++level)
            complete[static_cast<std::size_t>(level)] = complete_graph_basis(n, level, 1.0 / n);
        for (int level = n / 2 + 1; level <= n; ++level)
            complete[static_cast<std::size_t>(level)] = mirror_basis(complete[static_cast<std::size_t>(n - level)]);

        std::vector<double> ks;
        for (double k : {0.5, 1.0, 2.0, n / 4.0})
            if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);

        for (const auto& family : families) {
            Graph topology = [&] {
                if (family == "cycle") return make_cycle(n, 1.0);
                if (family == "half_complete_cycle") return make_half_complete_cycle(n / 2, 1.0);
                if (family == "random") return random_graph(n, rng, 1.0);
                throw InvalidParameter("unknown containment family '" + family + "'");
            }();
            const Graph gb = with_uniform_rate(topology, 1.0 / max_degree(topology));
            const ComparisonBases bases{kn, gb, complete, decompose_all_levels(gb)};
            for (double k : ks) {
                for (int level = 0; level <= n; ++level) {
                    const json tag = {{"family", family}, {"n", n}, {"k", k}, {"level", level}};
                    try {
                        const double r = containment_residual(bases, level, k, 2.0 * k);
                        c.record(r <= 1e-8, r, tag);
                    } catch (const HypothesisViolation&) {
                        c.record(false, std::numeric_limits<double>::infinity(), tag);
                    }
                }
            }
        }
    }
    return c;
}

CheckResult check_projection_mass(int count, int nmin, int nmax, std::uint64_t seed) {
    CheckResult c = named("projection_mass_inequality");
    Engine rng = check_engine(seed, 7);
    const int lo = std::max(4, nmin);
    for (int i = 0; i < count; ++i) {
        const int n = uniform_int(rng, lo, nmax);
        const Graph topology = random_graph(n, rng, 1.0);
        const Graph gb = with_uniform_rate(topology, 1.0 / max_degree(topology));
        const BooleanFunction f = random_boolean(n, rng);
        const double k = n / 4.0 * (1.0 - uniform(rng, 0.0, 1.0));
        const auto sides = projection_mass_inequality(prepare_comparison(make_complete(n, 1.0 / n), gb), f, k);
        const double gap = sides.rhs - sides.lhs;
        c.record(gap <= 1e-10, std::max(0.0, gap), {{"graph", graph_tag(gb)}, {"k", k}});
    }
    return c;
}

CheckResult check_monotonicity(int count, const std::vector<int>& ns, std::uint64_t seed) {
    CheckResult c = named("monotonicity_inequality");
    if (ns.empty()) return c;
    Engine rng = check_engine(seed, 8);
    for (int i = 0; i < count; ++i) {
        const int n = ns[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(ns.size()) - 1))];
        const double rate = uniform(rng, 0.2, 1.5);
        const Graph g = random_graph(n, rng, rate);
        const Graph sub = random_spanning_subgraph(g, rng);
        const BooleanFunction f = random_boolean(n, rng);
        const SpectralProfile p_super = spectral_profile(f, decompose_all_levels(g));
        const SpectralProfile p_sub = spectral_profile(f, decompose_all_levels(sub));
        double lam_max = 0.0;
        for (const auto& e : p_super.entries) lam_max = std::max(lam_max, e.eigenvalue);
        const double k = 2.0 * lam_max * (1.0 - uniform(rng, 0.0, 1.0));
        const double kprime = 2.0 * lam_max * (1.0 - uniform(rng, 0.0, 1.0));
        const auto sides = monotonicity_inequality_check(p_super, p_sub, k, kprime);
        const double gap = sides.lhs - sides.rhs;
        c.record(gap <= 1e-10, std::max(0.0, gap),
                 {{"graph", graph_tag(g)}, {"subgraph", graph_tag(sub)}, {"k", k}, {"kprime", kprime}});
    }
    return c;
}

CheckResult check_spectrum_chain(const std::vector<int>& halves, double rate) {
    CheckResult c = named("edge_monotone_spectra");
    for (int h : halves) {
        const Graph cyc = make_cycle(2 * h, rate);
        const Graph mid = make_half_complete_cycle(h, rate);
        const Graph full = make_complete(2 * h, rate);
        const bool nested = is_rated_subgraph(cyc, mid) && is_rated_subgraph(mid, full);
        for (int level = 0; level <= 2 * h; ++level) {
            const double v = std::max(spectrum_dominance_violation(mid, cyc, level),
                                      spectrum_dominance_violation(full, mid, level));
            c.record(nested && v <= 1e-10, v, {{"half", h}, {"level", level}});
        }
    }
    return c;
}

std::vector<MonteCarloInstance> monte_carlo_instances() {
    const Graph k4 = make_complete(4, 0.25);
    const Graph c8 = make_cycle(8, 0.5);
    const Graph h3top = make_half_complete_cycle(3, 1.0);
    const Graph h3 = with_uniform_rate(h3top, 1.0 / max_degree(h3top));
    return {
        {"K4 dictator t=0.2", k4, "dictator:0", 0.2},
        {"K4 dictator t=1", k4, "dictator:0", 1.0},
        {"K4 parity{0,2} t=0.2", k4, "parity:0,2", 0.2},
        {"K4 parity{0,2} t=1", k4, "parity:0,2", 1.0},
        {"C8 dictator t=0.2", c8, "dictator:0", 0.2},
        {"C8 dictator t=1", c8, "dictator:0", 1.0},
        {"C8 parity{0,2,4,6} t=0.2", c8, "parity:0,2,4,6", 0.2},
        {"C8 parity{0,2,4,6} t=1", c8, "parity:0,2,4,6", 1.0},
        {"HCC3 dictator t=0.2", h3, "dictator:3", 0.2},
        {"HCC3 parity-lower-odd t=1", h3, "parity-lower-odd", 1.0},
    };
}

CheckResult check_monte_carlo(const std::vector<MonteCarloInstance>& instances, std::uint64_t samples,
                              std::uint64_t seed, double se_multiple) {
    CheckResult c = named("monte_carlo_agreement");
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        const BooleanFunction f = make_function(inst.graph.n(), inst.function);
        const SpectralProfile p = spectral_profile(f, decompose_all_levels(inst.graph));
        SimulationSpec spec{inst.graph, inst.t, InitialDistribution::uniform(), seed + 2 * i, samples};
        const EstimateResult cov = estimate_covariance(spec, f);
        spec.seed = seed + 2 * i + 1;
        const EstimateResult flip = estimate_flip_probability(spec, f);
        const double cov_exact = exact_covariance(p, inst.t);
        const double flip_exact = exact_flip_probability(p, inst.t);
        auto z = [](double est, double se, double exact) {
            const double d = std::abs(est - exact);
            if (se > 0.0) return d / se;
            return d <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
        };
        const double zc = z(cov.point, cov.std_error, cov_exact);
        const double zf = z(flip.point, flip.std_error, flip_exact);
        c.record(zc <= se_multiple && zf <= se_multiple, std::max(zc, zf),
                 {{"instance", inst.label},
                  {"covariance", {{"estimate", cov.point}, {"std_error", cov.std_error}, {"exact", cov_exact}}},
                  {"flip_probability", {{"estimate", flip.point}, {"std_error", flip.std_error}, {"exact", flip_exact}}}});
    }
    return c;
}

std::vector<std::string> suite_names() { return {"generator", "spectral", "fourier", "oracle", "diagnostics", "dynamics", "all"}; }

std::vector<CheckResult> run_suite(const std::string& suite, int nmax, std::uint64_t seed) {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw InvalidParameter("unknown suite '" + suite + "'");
    if (nmax < 2 || nmax > 12) throw InvalidParameter("nmax must lie in 2..12");
    const bool all = suite == "all";
    std::vector<CheckResult> out;
    const auto graphs = standard_graphs(nmax, seed);

    if (all || suite == "generator") out.push_back(check_generator_invariants(graphs, seed));
    if (all || suite == "spectral") {
        out.push_back(check_eigensolver(graphs));
        out.push_back(check_complete_spectrum(2, nmax, {}));
        out.push_back(check_lift_lengths(nmax, 1.0));
        out.push_back(check_lift_dichotomy(graphs));
        out.push_back(check_orthogonality_preservation(nmax, 1.0));
        out.push_back(check_eigenvalue_bound(30, nmax, seed));
        out.push_back(check_kernel_independence(3, nmax));
    }
    if (all || suite == "fourier") out.push_back(check_profile_identities(30, nmax, seed));
    if (all || suite == "oracle") out.push_back(check_oracle_equivalence(30, std::min(nmax, 6), seed));
    if (all || suite == "diagnostics") {
        std::vector<int> ns;
        for (int n = 6; n <= nmax; n += 2) ns.push_back(n);
        out.push_back(check_containment(ns, {"cycle", "half_complete_cycle", "random"}, seed));
        if (nmax >= 4) out.push_back(check_projection_mass(30, 4, nmax, seed));
        std::vector<int> mono;
        for (int n : {5, 6})
            if (n <= nmax) mono.push_back(n);
        out.push_back(check_monotonicity(30, mono, seed));
        std::vector<int> halves;
        for (int h = 2; 2 * h <= nmax; ++h) halves.push_back(h);
        out.push_back(check_spectrum_chain(halves, 1.0));
    }
    if (all || suite == "dynamics") out.push_back(check_monte_carlo(monte_carlo_instances(), 20000, seed, 5.0));
    return out;
}

}  // namespace xproc
