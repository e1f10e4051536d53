#include "xproc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>
#include <cctype>

#include "xproc/errors.hpp"

namespace xproc {

namespace {

std::string edge_label(const Edge& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
    // FNV-1a over the 8 bytes of v.
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 2) {
        throw InvalidParameter("graph needs at least 2 vertices, got " + std::to_string(n_));
    }
    if (n_ > 63) {
        throw InvalidParameter("graph has " + std::to_string(n_) + " vertices; at most 63 are supported");
    }
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_) {
            throw InvalidParameter("edge " + edge_label(e) + " has an endpoint outside 0.." + std::to_string(n_ - 1));
        }
        if (e.u == e.v) {
            throw InvalidParameter("edge " + edge_label(e) + " is a self-loop");
        }
        if (!(e.rate > 0.0) || !std::isfinite(e.rate)) {
            throw InvalidParameter("edge " + edge_label(e) + " has non-positive rate");
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
            throw InvalidParameter("duplicate edge " + edge_label(edges_[i]));
        }
    }
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

std::optional<double> Graph::rate_of(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [](const Edge& e, const std::pair<int, int>& key) {
                                   return std::tie(e.u, e.v) < std::tie(key.first, key.second);
                               });
    if (it != edges_.end() && it->u == u && it->v == v) return it->rate;
    return std::nullopt;
}

std::optional<double> Graph::uniform_rate() const {
    if (edges_.empty()) return std::nullopt;
    const double r = edges_.front().rate;
    for (const auto& e : edges_) {
        if (e.rate != r) return std::nullopt;
    }
    return r;
}

double Graph::total_rate() const {
    double total = 0.0;
    for (const auto& e : edges_) total += e.rate;
    return total;
}

std::uint64_t Graph::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = mix64(h, static_cast<std::uint64_t>(n_));
    for (const auto& e : edges_) {
        h = mix64(h, static_cast<std::uint64_t>(e.u));
        h = mix64(h, static_cast<std::uint64_t>(e.v));
        std::uint64_t bits;
        std::memcpy(&bits, &e.rate, sizeof bits);
        h = mix64(h, bits);
    }
    return h;
}

Graph make_complete(int n, double rate) {
    if (n < 2) throw InvalidParameter("complete graph needs n >= 2");
    if (!(rate > 0.0)) throw InvalidParameter("rate must be positive");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, rate});
    return Graph(n, std::move(edges));
}

Graph make_cycle(int n, double rate) {
    if (n < 3) throw InvalidParameter("cycle needs n >= 3");
    if (!(rate > 0.0)) throw InvalidParameter("rate must be positive");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, rate});
    return Graph(n, std::move(edges));
}

Graph make_half_complete_cycle(int half, double rate) {
    if (half < 2) throw InvalidParameter("half_complete_cycle needs n >= 2");
    if (!(rate > 0.0)) throw InvalidParameter("rate must be positive");
    const int n = 2 * half;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        int u = i, v = (i + 1) % n;
        edges.push_back({std::min(u, v), std::max(u, v), rate});
    }
    for (int u = half; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (v == u + 1) continue;  // already a cycle edge
            edges.push_back({u, v, rate});
        }
    }
    // For half == 2 the upper block {2,3} is a single cycle edge; the wrap
    // edge (0,3) never lies inside the block, so no pair is produced twice.
    return Graph(n, std::move(edges));
}

int max_degree(const Graph& g) {
    auto deg = g.degrees();
    return *std::max_element(deg.begin(), deg.end());
}

bool is_connected(const Graph& g) {
    std::vector<int> parent(g.n());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = g.n();
    for (const auto& e : g.edges()) {
        int a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

Graph with_uniform_rate(const Graph& g, double rate) {
    auto edges = g.edges();
    for (auto& e : edges) e.rate = rate;
    return Graph(g.n(), std::move(edges));
}

bool has_edge_subset(const Graph& sub, const Graph& super) {
    if (sub.n() != super.n()) return false;
    return std::all_of(sub.edges().begin(), sub.edges().end(),
                       [&](const Edge& e) { return super.rate_of(e.u, e.v).has_value(); });
}

bool is_rated_subgraph(const Graph& sub, const Graph& super) {
    if (sub.n() != super.n()) return false;
    return std::all_of(sub.edges().begin(), sub.edges().end(), [&](const Edge& e) {
        auto r = super.rate_of(e.u, e.v);
        return r && std::abs(*r - e.rate) <= 1e-12 * std::max(1.0, std::abs(e.rate));
    });
}

bool is_complete(const Graph& g) {
    return g.edge_count() == static_cast<std::size_t>(g.n()) * (g.n() - 1) / 2;
}

Graph make_random_connected(int n, double p, double rate, std::uint64_t seed) {
    if (n < 2) throw InvalidParameter("random graph needs n >= 2");
    if (p < 0.0 || p > 1.0) throw InvalidParameter("edge probability must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
    std::vector<Edge> edges;
    // Random recursive tree: vertex v attaches to a uniform earlier vertex.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pick(0, i - 1);
        int a = order[i], b = order[pick(rng)];
        present[std::min(a, b)][std::max(a, b)] = true;
    }
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (!present[u][v] && coin(rng)) present[u][v] = true;
            if (present[u][v]) edges.push_back({u, v, rate});
        }
    }
    return Graph(n, std::move(edges));
}

nlohmann::json to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.rate});
    return {{"n", g.n()}, {"edges", edges}};
}

namespace {

// Line numbers (1-based) at which each element of the top-level "edges"
// array opens. Used only to make loader errors point at the right line.
std::vector<int> edge_entry_lines(const std::string& text) {
    std::vector<int> lines;
    auto key = text.find("\"edges\"");
    if (key == std::string::npos) return lines;
    int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(key), '\n'));
    int depth = 0;
    bool started = false;
    for (std::size_t i = key + 7; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n') ++line;
        if (c == '[') {
            ++depth;
            if (depth == 1) started = true;
            if (depth == 2) lines.push_back(line);
        } else if (c == ']') {
            --depth;
            if (started && depth == 0) break;
        } else if (depth == 1 && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
            lines.push_back(line);  // scalar where an [u,v,rate] triple belongs
            while (i + 1 < text.size() && text[i + 1] != ',' && text[i + 1] != ']') ++i;
        }
    }
    return lines;
}

Graph graph_from_json_impl(const nlohmann::json& j, const std::vector<int>* lines) {
    auto where = [&](std::size_t idx) {
        if (lines && idx < lines->size()) return "line " + std::to_string((*lines)[idx]) + ": ";
        return "edges[" + std::to_string(idx) + "]: ";
    };
    if (!j.is_object()) throw ParseError("graph JSON must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("graph JSON needs integer field \"n\"");
    if (!j.contains("edges") || !j["edges"].is_array()) throw ParseError("graph JSON needs array field \"edges\"");
    const int n = j["n"].get<int>();
    std::vector<Edge> edges;
    const auto& arr = j["edges"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& e = arr[i];
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
            !e[2].is_number()) {
            throw ParseError(where(i) + "edge must be [u, v, rate] with integer endpoints");
        }
        Edge edge{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()};
        if (edge.u >= edge.v) throw ParseError(where(i) + "edge endpoints must satisfy u < v");
        if (edge.v >= n || edge.u < 0) throw ParseError(where(i) + "edge endpoint out of range 0.." + std::to_string(n - 1));
        if (!(edge.rate > 0.0)) throw ParseError(where(i) + "edge rate must be positive");
        edges.push_back(edge);
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const InvalidParameter& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

Graph graph_from_json(const nlohmann::json& j) { return graph_from_json_impl(j, nullptr); }

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto pos = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
        throw ParseError(path + ": line " + std::to_string(line) + ": malformed JSON");
    }
    auto lines = edge_entry_lines(text);
    try {
        return graph_from_json_impl(j, &lines);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace xproc
