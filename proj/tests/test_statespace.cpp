#include <doctest.h>

#include <cstdlib>

#include "brute.hpp"
#include "xproc/errors.hpp"
#include "xproc/statespace.hpp"

using namespace xproc;

TEST_CASE("level enumeration") {
    const auto s31 = enumerate_level(3, 1);
    CHECK(s31.states() == std::vector<std::uint64_t>{1, 2, 4});
    CHECK(enumerate_level(4, 2).size() == 6);
    CHECK(enumerate_level(14, 7).size() == static_cast<std::size_t>(brute::binom(14, 7)));
    CHECK(enumerate_level(5, 0).states() == std::vector<std::uint64_t>{0});
    CHECK(enumerate_level(5, 5).states() == std::vector<std::uint64_t>{31});

    for (int n = 1; n <= 10; ++n) {
        for (int l = 0; l <= n; ++l) {
            const auto s = enumerate_level(n, l);
            REQUIRE(s.states() == brute::level_states(n, l));
            for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.index_of(s.state(i)) == i);
            CHECK(s.weight() * static_cast<double>(s.size()) == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    CHECK_THROWS_AS(enumerate_level(4, 5), InvalidParameter);
    CHECK_THROWS_AS(enumerate_level(4, -1), InvalidParameter);
}

TEST_CASE("state cap") {
    try {
        enumerate_level(16, 8, 10000);
        FAIL("expected the cap to trigger");
    } catch (const CapExceeded& e) {
        CHECK(e.states() == 12870u);
        CHECK(e.cap() == 10000u);
    }
    CHECK_NOTHROW(enumerate_level(16, 8, 20000));
    CHECK_THROWS_AS(enumerate_level(20, 10, 20000), CapExceeded);
    CHECK(state_cap() == (std::getenv("XPROC_STATE_CAP") ? state_cap() : kDefaultStateCap));
}

TEST_CASE("binomial table") {
    for (int n = 0; n <= 30; ++n)
        for (int k = 0; k <= n; ++k) CHECK(static_cast<double>(binomial(n, k)) == brute::binom(n, k));
    CHECK(binomial(5, 7) == 0);
}

TEST_CASE("configuration strings put vertex 0 first") {
    const Configuration x = configuration_from_string("0110");
    CHECK(x.n == 4);
    CHECK(x.bits == 0b0110u);
    CHECK(to_string(Configuration{0b0001, 4}) == "1000");
    CHECK(to_string(configuration_from_string("10110")) == "10110");
    CHECK_THROWS_AS(configuration_from_string("01a"), ParseError);
}

TEST_CASE("flip vertex") {
    const Configuration x = configuration_from_string("0110");
    CHECK(to_string(flip_vertex(x, 0)) == "1110");
    CHECK(to_string(flip_vertex(x, 1)) == "0010");
    for (std::uint64_t b = 0; b < 32; ++b) {
        const Configuration y{b, 5};
        for (int v = 0; v < 5; ++v) {
            CHECK(flip_vertex(flip_vertex(y, v), v) == y);
            CHECK(std::abs(flip_vertex(y, v).weight() - y.weight()) == 1);
        }
    }
    CHECK_THROWS_AS(flip_vertex(x, 4), InvalidParameter);
}

TEST_CASE("swap edge") {
    CHECK(to_string(swap_edge(configuration_from_string("10"), 0, 1)) == "01");
    CHECK(to_string(swap_edge(configuration_from_string("11"), 0, 1)) == "11");
    for (std::uint64_t b = 0; b < 32; ++b) {
        const Configuration y{b, 5};
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) {
                const Configuration z = swap_edge(y, u, v);
                CHECK(swap_edge(z, u, v) == y);
                CHECK(z.weight() == y.weight());
                const bool same = ((b >> u) & 1u) == ((b >> v) & 1u);
                CHECK((z == y) == same);
            }
    }
    CHECK_THROWS_AS(swap_edge(configuration_from_string("101"), 0, 3), InvalidParameter);
}

TEST_CASE("is below") {
    CHECK(is_below(configuration_from_string("0010"), configuration_from_string("0110")));
    CHECK_FALSE(is_below(configuration_from_string("1000"), configuration_from_string("0110")));
    const Configuration x = configuration_from_string("11011000");
    int count = 0;
    for (std::uint64_t b : brute::level_states(8, 2)) count += is_below(Configuration{b, 8}, x);
    CHECK(count == 6);
    CHECK_THROWS_AS(is_below(configuration_from_string("01"), configuration_from_string("011")), InvalidParameter);
}

TEST_CASE("swap adjacency is symmetric on a level") {
    const Graph g = make_random_connected(7, 0.4, 1.0, 3);
    for (int l = 0; l <= 7; ++l) {
        const auto s = enumerate_level(7, l);
        for (auto x : s.states())
            for (const auto& e : g.edges()) {
                const auto y = swap_bits(x, e.u, e.v);
                CHECK(std::popcount(y) == l);
                CHECK(swap_bits(y, e.u, e.v) == x);
            }
    }
}
