#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xproc/graph.hpp"

namespace xproc {

// A marble placement on n vertices packed into a word: bit v is 1 when
// vertex v holds a black marble.
struct Configuration {
    std::uint64_t bits = 0;
    int n = 0;

    int weight() const;  // number of black marbles
    bool operator==(const Configuration&) const = default;
};

// Fixed-width binary string, vertex 0 leftmost.
std::string to_string(const Configuration& x);
Configuration configuration_from_string(const std::string& s);

Configuration flip_vertex(const Configuration& x, Vertex v);
Configuration swap_edge(const Configuration& x, Vertex u, Vertex v);
inline Configuration swap_edge(const Configuration& x, const Edge& e) { return swap_edge(x, e.u, e.v); }

// True iff the black set of y is a subset of the black set of x.
bool is_below(const Configuration& y, const Configuration& x);

// Raw word versions used in the hot loops.
inline std::uint64_t swap_bits(std::uint64_t x, int u, int v) {
    const std::uint64_t differ = ((x >> u) ^ (x >> v)) & 1u;
    return x ^ ((differ << u) | (differ << v));
}

std::uint64_t binomial(int n, int k);

inline constexpr std::uint64_t kDefaultStateCap = 20000;

// XPROC_STATE_CAP overrides the default when set to a positive integer.
std::uint64_t state_cap();

// All configurations with exactly `level` black marbles among n vertices,
// in ascending order of their bit word. Index lookup is a colex rank, so
// no hash map is kept.
class LevelStateSpace {
public:
    LevelStateSpace(int n, int level, std::uint64_t cap);

    int n() const { return n_; }
    int level() const { return level_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<std::uint64_t>& states() const { return states_; }
    std::uint64_t state(std::size_t i) const { return states_[i]; }

    // Position of a word with popcount == level(); no range check.
    std::size_t index_of(std::uint64_t word) const;

    // Uniform measure pi^(l): 1/binom(n, l) per state.
    double weight() const { return weight_; }

    bool operator==(const LevelStateSpace& o) const { return n_ == o.n_ && level_ == o.level_; }

private:
    int n_;
    int level_;
    double weight_;
    std::vector<std::uint64_t> states_;
};

LevelStateSpace enumerate_level(int n, int level);
LevelStateSpace enumerate_level(int n, int level, std::uint64_t cap);

}  // namespace xproc
