#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace xproc {

using Vertex = int;

struct Edge {
    Vertex u;
    Vertex v;
    double rate;

    bool operator==(const Edge&) const = default;
};

// Undirected simple graph with a positive Poisson rate on every edge.
// Edges are kept canonical: u < v, sorted lexicographically, no duplicates.
class Graph {
public:
    // Throws InvalidParameter on n < 2, out-of-range or self-loop endpoints,
    // duplicate pairs or non-positive rates. Edges are canonicalized.
    Graph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::vector<int> degrees() const;

    // Rate of the edge {u, v}, if present.
    std::optional<double> rate_of(Vertex u, Vertex v) const;

    // The common rate when every edge carries the same rate.
    std::optional<double> uniform_rate() const;

    double total_rate() const;

    // Stable 64-bit hash of (n, edges, rates); used to tag generators.
    std::uint64_t fingerprint() const;

    bool operator==(const Graph&) const = default;

private:
    int n_;
    std::vector<Edge> edges_;
};

Graph make_complete(int n, double rate);
Graph make_cycle(int n, double rate);

// Graph on 2*half vertices: the 2*half cycle plus every missing
// pair inside the upper block {half, ..., 2*half-1}.
Graph make_half_complete_cycle(int half, double rate);

int max_degree(const Graph& g);
bool is_connected(const Graph& g);

// Same topology, every rate replaced by `rate`.
Graph with_uniform_rate(const Graph& g, double rate);

// Topology only: does every edge of `sub` appear in `super`?
bool has_edge_subset(const Graph& sub, const Graph& super);

// Rated subset: every edge of `sub` appears in `super` with the same rate
// (relative tolerance 1e-12).
bool is_rated_subgraph(const Graph& sub, const Graph& super);

bool is_complete(const Graph& g);

// Erdos-Renyi style draw conditioned on connectivity: a random spanning tree
// plus each remaining pair with probability p. Deterministic in seed.
Graph make_random_connected(int n, double p, double rate, std::uint64_t seed);

// JSON graph file: {"n": <int>, "edges": [[u, v, rate], ...]}.
nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// Parses the file; errors carry the line of the offending entry.
Graph load_graph_file(const std::string& path);

}  // namespace xproc
