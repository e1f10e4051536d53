#include "xproc/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "xproc/errors.hpp"

namespace xproc {

namespace {

constexpr std::size_t kMaxRecordedFailures = 8;

std::vector<SpectralBasis> complete_bases(int n, double alpha) {
    std::vector<SpectralBasis> bases(static_cast<std::size_t>(n + 1));
    for (int level = 0; 2 * level <= n; ++level) {
        bases[static_cast<std::size_t>(level)] = complete_graph_basis(n, level, alpha);
    }
    for (int level = n / 2 + 1; level <= n; ++level) {
        bases[static_cast<std::size_t>(level)] = mirror_basis(bases[static_cast<std::size_t>(n - level)]);
    }
    return bases;
}

double require_uniform_rate(const Graph& g, const char* which) {
    auto r = g.uniform_rate();
    if (!r) throw InvalidParameter(std::string(which) + " graph must carry a uniform rate");
    return *r;
}

std::string trend(const std::vector<double>& values) {
    if (values.size() < 2) return "constant";
    bool up = false, down = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        const double tol = 1e-12 * std::max(1.0, std::abs(values[i - 1]));
        if (d > tol) up = true;
        if (d < -tol) down = true;
    }
    if (up && down) return "mixed";
    if (up) return "nondecreasing";
    if (down) return "nonincreasing";
    return "constant";
}

}  // namespace

void CheckResult::record(bool ok, double residual, const nlohmann::json& instance) {
    ++instances;
    if (std::isfinite(residual)) max_residual = std::max(max_residual, residual);
    else max_residual = std::numeric_limits<double>::infinity();
    if (!ok) {
        ++violations;
        if (failures.size() < kMaxRecordedFailures) {
            nlohmann::json entry = {{"residual", std::isfinite(residual) ? nlohmann::json(residual) : nlohmann::json("inf")}};
            if (!instance.is_null()) entry["instance"] = instance;
            failures.push_back(entry);
        }
    }
}

nlohmann::json to_json(const CheckResult& c) {
    nlohmann::json j = {{"name", c.name},
                        {"instances", c.instances},
                        {"violations", c.violations},
                        {"max_residual", std::isfinite(c.max_residual) ? nlohmann::json(c.max_residual) : nlohmann::json("inf")}};
    if (!c.failures.empty()) j["failures"] = c.failures;
    return j;
}

double RatePolicy::rate_for(int param, const Graph& topology) const {
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::InverseVertices: return 1.0 / topology.n();
        case Kind::InverseMaxDegree: return 1.0 / max_degree(topology);
        case Kind::InverseParam: return 1.0 / param;
        case Kind::InverseParamMinusOne:
            if (param <= 1) throw InvalidParameter("rate 1/(p-1) needs p >= 2");
            return 1.0 / (param - 1);
    }
    return value;
}

std::string RatePolicy::describe() const {
    switch (kind) {
        case Kind::Constant: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", value);
            return buf;
        }
        case Kind::InverseVertices: return "1/n";
        case Kind::InverseMaxDegree: return "1/d";
        case Kind::InverseParam: return "1/p";
        case Kind::InverseParamMinusOne: return "1/(p-1)";
    }
    return "?";
}

RatePolicy parse_rate_policy(const std::string& s) {
    using K = RatePolicy::Kind;
    if (s == "1/n" || s == "one-over-n") return {K::InverseVertices, 0.0};
    if (s == "1/d" || s == "one-over-max-degree") return {K::InverseMaxDegree, 0.0};
    if (s == "1/p") return {K::InverseParam, 0.0};
    if (s == "1/(p-1)") return {K::InverseParamMinusOne, 0.0};
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !(v > 0.0)) throw std::invalid_argument(s);
        return {K::Constant, v};
    } catch (const std::exception&) {
        throw ParseError("unknown rate policy '" + s + "'");
    }
}

Graph make_family_graph(const std::string& family, int param, const RatePolicy& rate) {
    Graph topology = [&] {
        if (family == "complete") return make_complete(param, 1.0);
        if (family == "cycle") return make_cycle(param, 1.0);
        if (family == "half_complete_cycle") return make_half_complete_cycle(param, 1.0);
        if (family == "cycle2") return make_cycle(2 * param, 1.0);
        if (family == "complete2") return make_complete(2 * param, 1.0);
        throw ParseError("unknown graph family '" + family + "'");
    }();
    return with_uniform_rate(topology, rate.rate_for(param, topology));
}

SensitivityReport sensitivity_profile(const FamilySpec& family, const std::vector<int>& n_grid,
                                      const std::vector<double>& k_grid) {
    for (double k : k_grid)
        if (!(k > 0.0)) throw InvalidParameter("k grid values must be positive");
    SensitivityReport report;
    report.family = family;
    report.n_grid = n_grid;
    report.k_grid = k_grid;
    CheckResult decomposition;
    decomposition.name = "mass_decomposition_identity";
    CheckResult parseval;
    parseval.name = "parseval";

    for (int p : n_grid) {
        SensitivityRecord rec;
        try {
            const Graph g = make_family_graph(family.graph_family, p, family.rate);
            const BooleanFunction f = make_function(g.n(), family.function);
            const auto bases = decompose_all_levels(g);
            const SpectralProfile prof = spectral_profile(f, bases);
            rec.param = p;
            rec.vertices = g.n();
            rec.rate = *g.uniform_rate();
            rec.total_mass = prof.total_mass;
            rec.variance = prof.total_mass - prof.mean * prof.mean;
            rec.conditional_mean_variance = prof.conditional_mean_variance;
            rec.zero_mass = zero_mass(prof);
            for (double k : k_grid) {
                rec.low_mass.push_back(low_frequency_mass(prof, k));
                rec.tail_mass.push_back(tail_mass(prof, k));
                const double resid =
                    std::abs(low_frequency_mass_strict(prof, k) + rec.tail_mass.back() + rec.zero_mass - rec.total_mass);
                rec.decomposition_residual = std::max(rec.decomposition_residual, resid);
            }
            decomposition.record(rec.decomposition_residual <= 1e-10, rec.decomposition_residual, {{"n", p}});
            const double pres = std::abs(prof.total_mass - f.second_moment());
            parseval.record(pres <= 1e-10, pres, {{"n", p}});
        } catch (const CapExceeded& e) {
            report.truncated = true;
            report.truncated_at = p;
            report.truncation_reason = e.what();
            break;
        }
        report.records.push_back(std::move(rec));
    }
    for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
        std::vector<double> low, tail;
        for (const auto& r : report.records) {
            low.push_back(r.low_mass[ki]);
            tail.push_back(r.tail_mass[ki]);
        }
        report.low_mass_trend.push_back(trend(low));
        report.tail_mass_trend.push_back(trend(tail));
    }
    report.checks = {decomposition, parseval};
    return report;
}

nlohmann::json to_json(const SensitivityReport& r) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : r.records) {
        records.push_back({{"n", rec.param},
                           {"vertices", rec.vertices},
                           {"rate", rec.rate},
                           {"variance", rec.variance},
                           {"conditional_mean_variance", rec.conditional_mean_variance},
                           {"zero_mass", rec.zero_mass},
                           {"total_mass", rec.total_mass},
                           {"low_frequency_mass", rec.low_mass},
                           {"tail_mass", rec.tail_mass}});
    }
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    nlohmann::json j = {{"family",
                         {{"graph", r.family.graph_family},
                          {"rate", r.family.rate.describe()},
                          {"function", r.family.function}}},
                        {"n_grid", r.n_grid},
                        {"k_grid", r.k_grid},
                        {"records", records},
                        {"trends", {{"low_frequency_mass", r.low_mass_trend}, {"tail_mass", r.tail_mass_trend}}},
                        {"checks", checks}};
    if (r.truncated) {
        j["truncated"] = {{"at_n", r.truncated_at}, {"reason", r.truncation_reason}};
    }
    return j;
}

ComparisonBases prepare_comparison(const Graph& first, const Graph& second) {
    if (first.n() != second.n()) throw InvalidParameter("compared graphs must have the same vertex count");
    if (!is_connected(first) || !is_connected(second)) throw DisconnectedGraph("compared graphs must be connected");
    ComparisonBases out{first, second, {}, {}};
    auto alpha = first.uniform_rate();
    out.first_bases = is_complete(first) && alpha ? complete_bases(first.n(), *alpha) : decompose_all_levels(first);
    out.second_bases = decompose_all_levels(second);
    return out;
}

double containment_residual(const Graph& complete, const Graph& general, int level, double k, double kprime) {
    if (!is_complete(complete)) throw InvalidParameter("containment_residual: first graph must be complete");
    return containment_residual(prepare_comparison(complete, general), level, k, kprime);
}

double containment_residual(const ComparisonBases& bases, int level, double k, double kprime) {
    const Graph& ga = bases.first;
    const Graph& gb = bases.second;
    if (!is_complete(ga)) throw InvalidParameter("containment_residual: first graph must be complete");
    const double alpha = require_uniform_rate(ga, "complete");
    const double beta = require_uniform_rate(gb, "comparison");
    const int n = ga.n();
    if (level < 0 || level > n) throw InvalidParameter("level outside 0..n");
    if (!(k > 0.0) || !(kprime > 0.0)) throw InvalidParameter("thresholds k and k' must be positive");
    const double reach = alpha * kprime * (n - kprime + 1.0);
    if (reach < k * (1.0 - 1e-12)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "alpha k'(n-k'+1) = %.6g is below k = %.6g; the containment is not asserted", reach, k);
        throw HypothesisViolation(buf);
    }
    const auto& psi = bases.first_bases[static_cast<std::size_t>(level)];
    const auto& chi = bases.second_bases[static_cast<std::size_t>(level)];
    const double cutoff = 2.0 * beta * kprime * max_degree(gb);

    std::vector<Eigen::Index> low, keep;
    for (Eigen::Index i = 0; i < psi.eigenvalues.size(); ++i)
        if (!is_zero_eigenvalue(psi.eigenvalues[i]) && at_most(psi.eigenvalues[i], k)) low.push_back(i);
    for (Eigen::Index i = 0; i < chi.eigenvalues.size(); ++i)
        if (at_most(chi.eigenvalues[i], cutoff)) keep.push_back(i);
    if (low.empty()) return 0.0;

    const auto dim = psi.vectors.rows();
    Eigen::MatrixXd source(dim, static_cast<Eigen::Index>(low.size()));
    for (std::size_t c = 0; c < low.size(); ++c) source.col(static_cast<Eigen::Index>(c)) = psi.vectors.col(low[c]);
    Eigen::MatrixXd target(dim, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) target.col(static_cast<Eigen::Index>(c)) = chi.vectors.col(keep[c]);

    const Eigen::MatrixXd outside = source - target * (target.transpose() * source) / static_cast<double>(dim);
    // pi-norm of each residual column
    return (outside.colwise().norm() / std::sqrt(static_cast<double>(dim))).maxCoeff();
}

InequalitySides projection_mass_inequality(const Graph& general, const BooleanFunction& f, double k) {
    const int n = general.n();
    return projection_mass_inequality(prepare_comparison(make_complete(n, 1.0 / n), general), f, k);
}

InequalitySides projection_mass_inequality(const ComparisonBases& bases, const BooleanFunction& f, double k) {
    const int n = bases.first.n();
    if (!is_complete(bases.first)) throw InvalidParameter("projection_mass_inequality: first graph must be K_n");
    const double alpha = require_uniform_rate(bases.first, "complete");
    if (std::abs(alpha - 1.0 / n) > 1e-12 / n) throw InvalidParameter("complete graph must carry rate 1/n");
    const double beta = require_uniform_rate(bases.second, "comparison");
    if (std::abs(beta * max_degree(bases.second) - 1.0) > 1e-12) {
        throw InvalidParameter("comparison graph must carry rate 1/max_degree");
    }
    if (!(k > 0.0)) throw InvalidParameter("threshold k must be positive");
    if (k > n / 4.0) throw InvalidParameter("projection_mass_inequality needs k <= n/4");
    if (f.n() != n) throw InvalidParameter("function and graphs have different vertex counts");
    const auto complete_profile = spectral_profile(f, bases.first_bases);
    const auto general_profile = spectral_profile(f, bases.second_bases);
    return {low_frequency_mass(general_profile, 4.0 * k), low_frequency_mass(complete_profile, k)};
}

InequalitySides monotonicity_inequality_check(const Graph& super, const Graph& sub, const BooleanFunction& f,
                                              double k, double kprime) {
    if (!is_rated_subgraph(sub, super)) {
        throw InvalidParameter("monotonicity check needs the smaller graph's rated edges to be a subset of the larger's");
    }
    if (!is_connected(super) || !is_connected(sub)) throw DisconnectedGraph("monotonicity check needs connected graphs");
    if (f.n() != super.n()) throw InvalidParameter("function and graphs have different vertex counts");
    const auto p_super = spectral_profile(f, decompose_all_levels(super));
    const auto p_sub = spectral_profile(f, decompose_all_levels(sub));
    return monotonicity_inequality_check(p_super, p_sub, k, kprime);
}

InequalitySides monotonicity_inequality_check(const SpectralProfile& super_profile,
                                              const SpectralProfile& sub_profile, double k, double kprime) {
    if (!(k > 0.0) || !(kprime > 0.0)) throw InvalidParameter("thresholds k and k' must be positive");
    const double lhs = mass_above(sub_profile, kprime);
    const double low = low_frequency_mass(super_profile, k);
    const double high = mass_above(super_profile, k);
    const double root = std::sqrt(k / kprime * low) + std::sqrt(high);
    return {lhs, root * root};
}

double spectrum_dominance_violation(const Graph& super, const Graph& sub, int level) {
    const auto big = eigendecompose(build_level_generator(super, level));
    const auto small = eigendecompose(build_level_generator(sub, level));
    return std::max(0.0, (small.eigenvalues - big.eigenvalues).maxCoeff());
}

}  // namespace xproc
