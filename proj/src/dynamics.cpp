#include "xproc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xproc/errors.hpp"

namespace xproc {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class JumpChain {
public:
    explicit JumpChain(const Graph& g) : graph_(g) {
        double acc = 0.0;
        for (const auto& e : g.edges()) {
            acc += e.rate;
            cumulative_.push_back(acc);
        }
        total_ = acc;
    }

    Configuration run(const Configuration& x0, double t, Engine& rng, const JumpObserver& observer) const {
        std::uint64_t x = x0.bits;
        std::exponential_distribution<double> hold(total_);
        std::uniform_real_distribution<double> pick(0.0, total_);
        double time = 0.0;
        while (true) {
            time += hold(rng);
            if (time > t) break;
            const double u = pick(rng);
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
            if (it == cumulative_.end()) --it;
            const Edge& e = graph_.edges()[static_cast<std::size_t>(it - cumulative_.begin())];
            x = swap_bits(x, e.u, e.v);
            if (observer) observer(time, Configuration{x, x0.n});
        }
        return {x, x0.n};
    }

private:
    const Graph& graph_;
    std::vector<double> cumulative_;
    double total_ = 0.0;
};

void validate(const SimulationSpec& spec) {
    if (!(spec.t >= 0.0)) throw InvalidParameter("simulation horizon t must be nonnegative");
    if (spec.samples < 1) throw InvalidParameter("samples must be at least 1");
    if (spec.initial.kind == InitialDistribution::Kind::Level &&
        (spec.initial.level < 0 || spec.initial.level > spec.graph.n())) {
        throw InvalidParameter("initial level outside 0..n");
    }
}

// Runs the pairs (f(X_0), h(X_t)) for every sample in index order.
template <typename Visit>
void for_each_pair(const SimulationSpec& spec, Visit&& visit) {
    validate(spec);
    const JumpChain chain(spec.graph);
    for (std::uint64_t i = 0; i < spec.samples; ++i) {
        Engine rng = sample_engine(spec.seed, i);
        const Configuration x0 = sample_initial(spec.initial, spec.graph.n(), rng);
        const Configuration xt = spec.t > 0.0 ? chain.run(x0, spec.t, rng, {}) : x0;
        visit(x0.bits, xt.bits);
    }
}

EstimateResult mean_with_error(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return {mean, sd / std::sqrt(n), v.size()};
}

}  // namespace

Engine sample_engine(std::uint64_t seed, std::uint64_t index) {
    return Engine(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Configuration sample_initial(const InitialDistribution& init, int n, Engine& rng) {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    if (init.kind == InitialDistribution::Kind::Uniform) return {rng() & mask, n};
    // Floyd's algorithm for a uniform `level`-subset of the vertices.
    std::uint64_t bits = 0;
    for (int j = n - init.level; j < n; ++j) {
        std::uniform_int_distribution<int> d(0, j);
        const int v = d(rng);
        bits |= (bits >> v) & 1u ? std::uint64_t{1} << j : std::uint64_t{1} << v;
    }
    return {bits, n};
}

Configuration simulate_path(const Graph& g, const Configuration& x0, double t, Engine& rng,
                            const JumpObserver& observer) {
    if (!(t >= 0.0)) throw InvalidParameter("simulate_path: t must be nonnegative");
    if (x0.n != g.n()) throw InvalidParameter("simulate_path: configuration length differs from graph size");
    if (t == 0.0) return x0;
    return JumpChain(g).run(x0, t, rng, observer);
}

Configuration simulate_path(const Graph& g, const Configuration& x0, double t, std::uint64_t seed) {
    Engine rng = sample_engine(seed, 0);
    return simulate_path(g, x0, t, rng);
}

EstimateResult estimate_covariance(const SimulationSpec& spec, const BooleanFunction& f) {
    if (f.n() != spec.graph.n()) throw InvalidParameter("function and graph have different vertex counts");
    std::vector<double> a, b;
    a.reserve(spec.samples);
    b.reserve(spec.samples);
    for_each_pair(spec, [&](std::uint64_t x0, std::uint64_t xt) {
        a.push_back(f(x0));
        b.push_back(f(xt));
    });
    const double n = static_cast<double>(a.size());
    double sa = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sab += a[i] * b[i];
    }
    const double point = sab / n - (sa / n) * (sa / n);
    if (a.size() < 2) return {point, 0.0, a.size()};
    // Leave-one-out replicates of the plug-in covariance.
    std::vector<double> loo(a.size());
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ma = (sa - a[i]) / (n - 1.0);
        loo[i] = (sab - a[i] * b[i]) / (n - 1.0) - ma * ma;
        loo_mean += loo[i];
    }
    loo_mean /= n;
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    return {point, std::sqrt((n - 1.0) / n * ss), a.size()};
}

EstimateResult estimate_flip_probability(const SimulationSpec& spec, const BooleanFunction& f) {
    if (!f.is_boolean()) throw InvalidParameter("flip probability needs a Boolean function");
    if (f.n() != spec.graph.n()) throw InvalidParameter("function and graph have different vertex counts");
    std::vector<double> flips;
    flips.reserve(spec.samples);
    for_each_pair(spec, [&](std::uint64_t x0, std::uint64_t xt) { flips.push_back(f(x0) != f(xt) ? 1.0 : 0.0); });
    return mean_with_error(flips);
}

EstimateResult estimate_cross_moment(const SimulationSpec& spec, const BooleanFunction& f, const BooleanFunction& h) {
    if (f.n() != spec.graph.n() || h.n() != spec.graph.n()) {
        throw InvalidParameter("function and graph have different vertex counts");
    }
    std::vector<double> prod;
    prod.reserve(spec.samples);
    for_each_pair(spec, [&](std::uint64_t x0, std::uint64_t xt) { prod.push_back(f(x0) * h(xt)); });
    return mean_with_error(prod);
}

}  // namespace xproc
