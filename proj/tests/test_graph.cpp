#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "xproc/errors.hpp"
#include "xproc/graph.hpp"

using namespace xproc;

namespace {

std::set<std::pair<int, int>> pairs(const Graph& g) {
    std::set<std::pair<int, int>> s;
    for (const auto& e : g.edges()) s.insert({e.u, e.v});
    return s;
}

int brute_max_degree(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.n(); ++v) {
        int d = 0;
        for (const auto& e : g.edges()) d += (e.u == v) + (e.v == v);
        best = std::max(best, d);
    }
    return best;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "xproc_test_" + name + ".json";
    std::ofstream(path) << text;
    return path;
}

std::string load_error(const std::string& text) {
    const auto path = write_temp("bad", text);
    try {
        load_graph_file(path);
    } catch (const ParseError& e) {
        std::remove(path.c_str());
        return e.what();
    }
    std::remove(path.c_str());
    return "";
}

}  // namespace

TEST_CASE("complete graphs") {
    const Graph k2 = make_complete(2, 1.0);
    REQUIRE(k2.edge_count() == 1);
    CHECK(k2.edges()[0] == Edge{0, 1, 1.0});

    const Graph k4 = make_complete(4, 0.25);
    CHECK(k4.edge_count() == 6);
    for (const auto& e : k4.edges()) CHECK(e.rate == 0.25);

    const Graph k7 = make_complete(7, 1.0 / 6);
    CHECK(k7.edge_count() == 21);
    CHECK(max_degree(k7) == 6);

    for (int n = 2; n <= 20; ++n) CHECK(make_complete(n, 1.0).edge_count() == static_cast<std::size_t>(n * (n - 1) / 2));

    CHECK_THROWS_AS(make_complete(1, 1.0), InvalidParameter);
    CHECK_THROWS_AS(make_complete(4, 0.0), InvalidParameter);
    CHECK_THROWS_AS(make_complete(4, -1.0), InvalidParameter);
}

TEST_CASE("cycles") {
    const Graph c4 = make_cycle(4, 0.5);
    CHECK(pairs(c4) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    for (const auto& e : c4.edges()) CHECK(e.rate == 0.5);
    CHECK(pairs(make_cycle(3, 1.0)) == pairs(make_complete(3, 1.0)));
    for (int d : make_cycle(14, 0.5).degrees()) CHECK(d == 2);
    CHECK(max_degree(make_cycle(6, 1.0)) == 2);
    CHECK_THROWS_AS(make_cycle(2, 1.0), InvalidParameter);
}

TEST_CASE("half complete cycle") {
    // Brute force: cycle pairs plus every pair inside the upper block.
    for (int half = 2; half <= 8; ++half) {
        const int n = 2 * half;
        std::set<std::pair<int, int>> expected;
        for (int i = 0; i < n; ++i) expected.insert({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
        for (int u = half; u < n; ++u)
            for (int v = u + 1; v < n; ++v) expected.insert({u, v});
        const Graph g = make_half_complete_cycle(half, 1.0);
        CHECK(g.n() == n);
        CHECK(pairs(g) == expected);
        CHECK(max_degree(g) == brute_max_degree(g));
        CHECK(is_connected(g));
    }
    const Graph g7 = make_half_complete_cycle(7, 1.0 / 6);
    CHECK(g7.edge_count() == 14 + 15);
    CHECK(max_degree(g7) == 7);
    CHECK(make_half_complete_cycle(2, 1.0).edge_count() == 4);
    CHECK(make_half_complete_cycle(3, 0.5).edge_count() == 7);
    CHECK_THROWS_AS(make_half_complete_cycle(1, 1.0), InvalidParameter);
}

TEST_CASE("cycle, half complete cycle and complete graph are nested") {
    for (int half = 3; half <= 7; ++half) {
        const auto c = pairs(make_cycle(2 * half, 1.0));
        const auto h = pairs(make_half_complete_cycle(half, 1.0));
        const auto k = pairs(make_complete(2 * half, 1.0));
        CHECK(std::includes(h.begin(), h.end(), c.begin(), c.end()));
        CHECK(h.size() > c.size());
        CHECK(std::includes(k.begin(), k.end(), h.begin(), h.end()));
        CHECK(k.size() > h.size());
        CHECK(is_rated_subgraph(make_cycle(2 * half, 1.0), make_half_complete_cycle(half, 1.0)));
        CHECK_FALSE(is_rated_subgraph(make_cycle(2 * half, 2.0), make_half_complete_cycle(half, 1.0)));
        CHECK(has_edge_subset(make_cycle(2 * half, 2.0), make_half_complete_cycle(half, 1.0)));
    }
}

TEST_CASE("connectivity") {
    CHECK(is_connected(make_complete(5, 1.0)));
    CHECK_FALSE(is_connected(Graph(4, {{0, 1, 1.0}, {2, 3, 1.0}})));
    std::vector<Edge> path;
    for (int i = 0; i + 1 < 10; ++i) path.push_back({i, i + 1, 1.0});
    CHECK(is_connected(Graph(10, path)));
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(is_connected(make_random_connected(9, 0.1, 1.0, seed)));
}

TEST_CASE("validation and canonical order") {
    const Graph g(3, {{2, 1, 1.0}, {1, 0, 2.0}});
    CHECK(g.edges()[0] == Edge{0, 1, 2.0});
    CHECK(g.edges()[1] == Edge{1, 2, 1.0});
    CHECK(g.rate_of(2, 1) == 1.0);
    CHECK_FALSE(g.rate_of(0, 2).has_value());
    CHECK_FALSE(g.uniform_rate().has_value());
    CHECK(g.total_rate() == 3.0);
    CHECK_THROWS_AS(Graph(1, {}), InvalidParameter);
    CHECK_THROWS_AS(Graph(3, {{0, 0, 1.0}}), InvalidParameter);
    CHECK_THROWS_AS(Graph(3, {{0, 3, 1.0}}), InvalidParameter);
    CHECK_THROWS_AS(Graph(3, {{0, 1, 1.0}, {1, 0, 1.0}}), InvalidParameter);
    CHECK_THROWS_AS(Graph(3, {{0, 1, 0.0}}), InvalidParameter);
    CHECK(make_complete(5, 1.0).fingerprint() == make_complete(5, 1.0).fingerprint());
    CHECK(make_complete(5, 1.0).fingerprint() != make_complete(5, 0.5).fingerprint());
    CHECK(is_complete(make_complete(6, 1.0)));
    CHECK_FALSE(is_complete(make_cycle(6, 1.0)));
}

TEST_CASE("json round trip") {
    const Graph g(4, {{0, 1, 0.5}, {1, 2, 1.25}, {2, 3, 2.0}, {0, 3, 0.1}});
    CHECK(graph_from_json(to_json(g)) == g);
    const auto path = write_temp("ok", to_json(g).dump(2));
    CHECK(load_graph_file(path) == g);
    std::remove(path.c_str());
}

TEST_CASE("loader reports the offending line") {
    const std::string reversed = "{\n  \"n\": 3,\n  \"edges\": [\n    [0, 1, 1.0],\n    [2, 1, 1.0]\n  ]\n}\n";
    CHECK(load_error(reversed).find("line 5") != std::string::npos);
    const std::string rate = "{\"n\": 3,\n\"edges\": [[0, 1, 1.0],\n[1, 2, -1]]}";
    CHECK(load_error(rate).find("line 3") != std::string::npos);
    const std::string shape = "{\"n\": 3, \"edges\": [\n[0, 1]\n]}";
    CHECK(load_error(shape).find("line 2") != std::string::npos);
    const std::string broken = "{\"n\": 3,\n\"edges\": [[0, 1, 1.0]\n";
    CHECK(load_error(broken).find("line") != std::string::npos);
    CHECK(load_error("{\"edges\": []}").find("\"n\"") != std::string::npos);
    CHECK(load_error("{\"n\": 3, \"edges\": [[0, 1, 1.0], [0, 1, 2.0]]}").find("duplicate") != std::string::npos);
}
