#include "xproc/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "xproc/errors.hpp"

namespace xproc {

namespace {

void require_nonnegative(double t, const char* what) {
    if (!(t >= 0.0)) throw InvalidParameter(std::string(what) + " must be nonnegative");
}

void require_positive(double k) {
    if (!(k > 0.0)) throw InvalidParameter("eigenvalue threshold k must be positive");
}

std::vector<double> table_for(int n) {
    if (n < 1 || n > kMaxFunctionVertices) {
        throw InvalidParameter("function tables support 1.." + std::to_string(kMaxFunctionVertices) + " vertices");
    }
    return std::vector<double>(std::size_t{1} << n, 0.0);
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer '" + s + "' in " + what);
    }
}

}  // namespace

BooleanFunction::BooleanFunction(int n, std::vector<double> values, std::string name)
    : n_(n), values_(std::move(values)), name_(std::move(name)) {
    if (n_ < 1 || n_ > kMaxFunctionVertices) {
        throw InvalidParameter("function tables support 1.." + std::to_string(kMaxFunctionVertices) + " vertices");
    }
    if (values_.size() != (std::size_t{1} << n_)) {
        throw InvalidParameter("function table has " + std::to_string(values_.size()) + " entries, expected 2^" +
                               std::to_string(n_));
    }
    boolean_ = std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

LevelFunction BooleanFunction::restrict_to(const LevelStateSpace& space) const {
    if (space.n() != n_) throw InvalidParameter("restrict_to: level belongs to a different vertex count");
    LevelFunction out(static_cast<Eigen::Index>(space.size()));
    for (std::size_t i = 0; i < space.size(); ++i) out[static_cast<Eigen::Index>(i)] = values_[space.state(i)];
    return out;
}

double BooleanFunction::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

double BooleanFunction::second_moment() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s / static_cast<double>(values_.size());
}

BooleanFunction make_dictator(int n, Vertex v) {
    auto t = table_for(n);
    if (v < 0 || v >= n) throw InvalidParameter("dictator vertex out of range");
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = static_cast<double>((x >> v) & 1u);
    return BooleanFunction(n, std::move(t), "dictator:" + std::to_string(v));
}

BooleanFunction make_parity(int n, const std::vector<Vertex>& set) {
    auto t = table_for(n);
    std::uint64_t mask = 0;
    std::string name = "parity:";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] < 0 || set[i] >= n) throw InvalidParameter("parity vertex out of range");
        mask |= std::uint64_t{1} << set[i];
        name += (i ? "," : "") + std::to_string(set[i]);
    }
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = static_cast<double>(std::popcount(x & mask) & 1);
    return BooleanFunction(n, std::move(t), name);
}

BooleanFunction make_majority(int n) {
    auto t = table_for(n);
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = 2 * std::popcount(x) > n ? 1.0 : 0.0;
    return BooleanFunction(n, std::move(t), "majority");
}

BooleanFunction make_constant(int n, double c) {
    auto t = table_for(n);
    std::fill(t.begin(), t.end(), c);
    return BooleanFunction(n, std::move(t), "constant");
}

BooleanFunction make_table(int n, std::vector<double> values) {
    return BooleanFunction(n, std::move(values), "table");
}

std::vector<Vertex> alternating_lower_set(int half) {
    std::vector<Vertex> set;
    for (int v = 0; v < half; v += 2) set.push_back(v);
    return set;
}

BooleanFunction make_function(int n, const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') {
        const std::string path = spec.substr(1);
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open function table " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception&) {
            throw ParseError(path + ": malformed JSON");
        }
        const nlohmann::json& arr = j.is_object() && j.contains("values") ? j["values"] : j;
        if (!arr.is_array()) throw ParseError(path + ": expected an array of values or {\"values\": [...]}");
        std::vector<double> values;
        for (const auto& v : arr) {
            if (!v.is_number()) throw ParseError(path + ": table values must be numbers");
            values.push_back(v.get<double>());
        }
        if (values.size() != (std::size_t{1} << n)) {
            throw ParseError(path + ": table has " + std::to_string(values.size()) + " entries, expected 2^" +
                             std::to_string(n));
        }
        return BooleanFunction(n, std::move(values), "table:" + path);
    }
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (family == "dictator") return make_dictator(n, parse_int(args, "dictator"));
    if (family == "parity") {
        std::vector<Vertex> set;
        std::stringstream ss(args);
        for (std::string item; std::getline(ss, item, ',');) set.push_back(parse_int(item, "parity"));
        return make_parity(n, set);
    }
    if (family == "parity-lower-odd") {
        auto f = make_parity(n, alternating_lower_set(n / 2));
        return BooleanFunction(n, f.values(), "parity-lower-odd");
    }
    if (family == "majority") return make_majority(n);
    if (family == "constant") {
        try {
            return make_constant(n, args.empty() ? 1.0 : std::stod(args));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad constant '" + args + "'");
        }
    }
    throw ParseError("unknown function family '" + family + "'");
}

SpectralProfile spectral_profile(const BooleanFunction& f, const std::vector<SpectralBasis>& bases) {
    const int n = f.n();
    if (bases.size() != static_cast<std::size_t>(n + 1)) {
        throw InvalidParameter("spectral_profile needs bases for all levels 0.." + std::to_string(n));
    }
    SpectralProfile p;
    p.n = n;
    p.boolean = f.is_boolean();
    const double total_states = std::ldexp(1.0, n);
    double mean = 0.0, cond_second = 0.0;
    for (int level = 0; level <= n; ++level) {
        const auto& b = bases[static_cast<std::size_t>(level)];
        if (b.n != n || b.level != level) throw InvalidParameter("basis for level " + std::to_string(level) + " is missing");
        LevelStateSpace space(n, level, std::numeric_limits<std::uint64_t>::max());
        if (static_cast<std::size_t>(b.vectors.rows()) != space.size()) {
            throw InvalidParameter("basis size does not match level " + std::to_string(level));
        }
        const LevelFunction fl = f.restrict_to(space);
        const double dim = static_cast<double>(space.size());
        const double prob = dim / total_states;  // P(|X_0| = l)
        const Eigen::VectorXd c = b.vectors.transpose() * fl / dim;
        const double scale = std::sqrt(prob);
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            const double coeff = scale * c[i];
            p.entries.push_back({level, static_cast<int>(i), b.eigenvalues[i], coeff});
            p.total_mass += coeff * coeff;
        }
        const double level_mean = fl.sum() / dim;
        mean += prob * level_mean;
        cond_second += prob * level_mean * level_mean;
    }
    p.mean = mean;
    p.conditional_mean_variance = std::max(0.0, cond_second - mean * mean);
    return p;
}

double zero_mass(const SpectralProfile& p) {
    double s = 0.0;
    for (const auto& e : p.entries)
        if (is_zero_eigenvalue(e.eigenvalue)) s += e.coefficient * e.coefficient;
    return s;
}

double exact_correlation(const SpectralProfile& p, double t) {
    require_nonnegative(t, "time t");
    double s = 0.0;
    for (const auto& e : p.entries) {
        const double decay = is_zero_eigenvalue(e.eigenvalue) ? 1.0 : std::exp(-t * e.eigenvalue);
        s += decay * e.coefficient * e.coefficient;
    }
    return s;
}

double exact_covariance(const SpectralProfile& p, double t) { return exact_correlation(p, t) - p.mean * p.mean; }

double exact_flip_probability(const SpectralProfile& p, double eps) {
    if (!p.boolean) throw InvalidParameter("flip probability formula needs a Boolean function");
    require_nonnegative(eps, "eps");
    double s = 0.0;
    for (const auto& e : p.entries) {
        if (is_zero_eigenvalue(e.eigenvalue)) continue;
        s += -std::expm1(-eps * e.eigenvalue) * e.coefficient * e.coefficient;
    }
    return 2.0 * s;
}

double low_frequency_mass(const SpectralProfile& p, double k) {
    require_positive(k);
    double s = 0.0;
    for (const auto& e : p.entries)
        if (!is_zero_eigenvalue(e.eigenvalue) && at_most(e.eigenvalue, k)) s += e.coefficient * e.coefficient;
    return s;
}

double low_frequency_mass_strict(const SpectralProfile& p, double k) {
    require_positive(k);
    double s = 0.0;
    for (const auto& e : p.entries)
        if (!is_zero_eigenvalue(e.eigenvalue) && !at_least(e.eigenvalue, k)) s += e.coefficient * e.coefficient;
    return s;
}

double tail_mass(const SpectralProfile& p, double k) {
    require_positive(k);
    double s = 0.0;
    for (const auto& e : p.entries)
        if (!is_zero_eigenvalue(e.eigenvalue) && at_least(e.eigenvalue, k)) s += e.coefficient * e.coefficient;
    return s;
}

double mass_above(const SpectralProfile& p, double k) {
    require_positive(k);
    double s = 0.0;
    for (const auto& e : p.entries)
        if (!is_zero_eigenvalue(e.eigenvalue) && !at_most(e.eigenvalue, k)) s += e.coefficient * e.coefficient;
    return s;
}

std::vector<EigenvalueMass> mass_by_eigenvalue(const SpectralProfile& p) {
    std::vector<EigenvalueMass> raw;
    raw.reserve(p.entries.size());
    for (const auto& e : p.entries) {
        raw.push_back({is_zero_eigenvalue(e.eigenvalue) ? 0.0 : e.eigenvalue, e.coefficient * e.coefficient});
    }
    std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.eigenvalue < b.eigenvalue; });
    std::vector<EigenvalueMass> merged;
    double anchor = 0.0;
    for (const auto& r : raw) {
        if (!merged.empty() && same_eigenvalue(r.eigenvalue, anchor)) {
            merged.back().mass += r.mass;
        } else {
            merged.push_back(r);
            anchor = r.eigenvalue;
        }
    }
    return merged;
}

void write_profile_csv(std::ostream& os, const SpectralProfile& p) {
    os << "level,eigenvalue,coeff_sq\n";
    char buf[96];
    for (const auto& e : p.entries) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", e.level, e.eigenvalue, e.coefficient * e.coefficient);
        os << buf;
    }
}

nlohmann::json profile_summary_json(const SpectralProfile& p) {
    nlohmann::json masses = nlohmann::json::array();
    for (const auto& m : mass_by_eigenvalue(p)) masses.push_back({{"eigenvalue", m.eigenvalue}, {"mass", m.mass}});
    return {{"mean", p.mean},
            {"variance", p.total_mass - p.mean * p.mean},
            {"conditional_mean_variance", p.conditional_mean_variance},
            {"total_mass", p.total_mass},
            {"mass_by_eigenvalue", masses}};
}

}  // namespace xproc
