#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "xproc/fourier.hpp"
#include "xproc/graph.hpp"
#include "xproc/statespace.hpp"

namespace xproc {

using Engine = std::mt19937_64;

// Independent stream for one sample: the engine is seeded with a
// SplitMix64 mix of (seed, index), so results do not depend on the order
// or the worker that draws the samples.
Engine sample_engine(std::uint64_t seed, std::uint64_t index);

struct InitialDistribution {
    enum class Kind { Uniform, Level };
    Kind kind = Kind::Uniform;
    int level = 0;  // used when kind == Level

    static InitialDistribution uniform() { return {}; }
    static InitialDistribution on_level(int l) { return {Kind::Level, l}; }
};

struct SimulationSpec {
    Graph graph;
    double t = 0.0;
    InitialDistribution initial{};
    std::uint64_t seed = 0;
    std::uint64_t samples = 1;
};

struct EstimateResult {
    double point = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

Configuration sample_initial(const InitialDistribution& init, int n, Engine& rng);

// Called after every jump with the jump time and the new configuration.
using JumpObserver = std::function<void(double, const Configuration&)>;

// Total-rate jump chain: Exponential(R) holding times with R the sum of the
// edge rates; each jump swaps the endpoints of an edge chosen with
// probability rate/R.
Configuration simulate_path(const Graph& g, const Configuration& x0, double t, Engine& rng,
                            const JumpObserver& observer = {});
Configuration simulate_path(const Graph& g, const Configuration& x0, double t, std::uint64_t seed);

// Cov(f(X_0), f(X_t)) with a jackknife standard error.
EstimateResult estimate_covariance(const SimulationSpec& spec, const BooleanFunction& f);

// P(f(X_0) != f(X_t)) with a binomial standard error. Boolean f only.
EstimateResult estimate_flip_probability(const SimulationSpec& spec, const BooleanFunction& f);

// E[f(X_0) h(X_t)] with standard error sd/sqrt(N).
EstimateResult estimate_cross_moment(const SimulationSpec& spec, const BooleanFunction& f, const BooleanFunction& h);

}  // namespace xproc
