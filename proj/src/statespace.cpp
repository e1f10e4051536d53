#include "xproc/statespace.hpp"

#include <array>
#include <bit>
#include <cstdlib>

#include "xproc/errors.hpp"

namespace xproc {

namespace {

constexpr int kMaxN = 64;

const std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1>& pascal() {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> t{};
        for (int n = 0; n <= kMaxN; ++n) {
            t[n][0] = 1;
            for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
        return t;
    }();
    return table;
}

void check_vertex(const Configuration& x, Vertex v) {
    if (v < 0 || v >= x.n) {
        throw InvalidParameter("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(x.n));
    }
}

}  // namespace

int Configuration::weight() const { return std::popcount(bits); }

std::string to_string(const Configuration& x) {
    std::string s(static_cast<std::size_t>(x.n), '0');
    for (int v = 0; v < x.n; ++v)
        if ((x.bits >> v) & 1u) s[static_cast<std::size_t>(v)] = '1';
    return s;
}

Configuration configuration_from_string(const std::string& s) {
    if (s.empty() || s.size() > 63) throw ParseError("configuration string must have 1..63 characters");
    Configuration x{0, static_cast<int>(s.size())};
    for (std::size_t v = 0; v < s.size(); ++v) {
        if (s[v] == '1') x.bits |= std::uint64_t{1} << v;
        else if (s[v] != '0') throw ParseError("configuration string may only contain 0 and 1");
    }
    return x;
}

Configuration flip_vertex(const Configuration& x, Vertex v) {
    check_vertex(x, v);
    return {x.bits ^ (std::uint64_t{1} << v), x.n};
}

Configuration swap_edge(const Configuration& x, Vertex u, Vertex v) {
    check_vertex(x, u);
    check_vertex(x, v);
    return {swap_bits(x.bits, u, v), x.n};
}

bool is_below(const Configuration& y, const Configuration& x) {
    if (y.n != x.n) throw InvalidParameter("is_below: configurations have different lengths");
    return (y.bits & ~x.bits) == 0;
}

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n || n > kMaxN) return 0;
    return pascal()[n][k];
}

std::uint64_t state_cap() {
    if (const char* env = std::getenv("XPROC_STATE_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultStateCap;
}

LevelStateSpace::LevelStateSpace(int n, int level, std::uint64_t cap) : n_(n), level_(level) {
    if (n < 1 || n > 63) throw InvalidParameter("vertex count must lie in 1..63");
    if (level < 0 || level > n) {
        throw InvalidParameter("level " + std::to_string(level) + " outside 0.." + std::to_string(n));
    }
    const std::uint64_t count = binomial(n, level);
    if (count > cap) throw CapExceeded(count, cap);
    weight_ = 1.0 / static_cast<double>(count);
    states_.reserve(count);
    if (level == 0) {
        states_.push_back(0);
        return;
    }
    const std::uint64_t limit = n == 63 ? ~std::uint64_t{0} >> 1 : (std::uint64_t{1} << n) - 1;
    std::uint64_t w = (std::uint64_t{1} << level) - 1;
    // Gosper's hack: next larger word with the same popcount.
    while (true) {
        states_.push_back(w);
        if (states_.size() == count) break;
        const std::uint64_t c = w & (~w + 1);
        const std::uint64_t r = w + c;
        w = (((r ^ w) >> 2) / c) | r;
        if (w > limit) break;
    }
}

std::size_t LevelStateSpace::index_of(std::uint64_t word) const {
    const auto& t = pascal();
    std::size_t rank = 0;
    int i = 1;
    while (word) {
        const int c = std::countr_zero(word);
        rank += t[c][i];  // zero when c < i
        word &= word - 1;
        ++i;
    }
    return rank;
}

LevelStateSpace enumerate_level(int n, int level) { return LevelStateSpace(n, level, state_cap()); }

LevelStateSpace enumerate_level(int n, int level, std::uint64_t cap) { return LevelStateSpace(n, level, cap); }

}  // namespace xproc
