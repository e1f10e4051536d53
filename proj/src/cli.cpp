#include "xproc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "xproc/diagnostics.hpp"
#include "xproc/dynamics.hpp"
#include "xproc/errors.hpp"
#include "xproc/fourier.hpp"
#include "xproc/generator.hpp"
#include "xproc/spectral.hpp"
#include "xproc/verify.hpp"

namespace xproc {

namespace {

using nlohmann::json;

const std::vector<std::string> kSubcommands = {"spectrum", "profile", "exact", "simulate", "verify", "compare"};

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Runs `body`, turning library errors into a ConfigError naming `field`.
template <class F>
auto for_field(const std::string& field, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const ConfigError&) {
        throw;
    } catch (const ConvergenceFailure&) {
        throw;
    } catch (const SymmetryViolation&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(field, e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(field, e.what());
    } catch (const std::logic_error& e) {
        throw ConfigError(field, std::string("malformed value (") + e.what() + ")");
    }
}

int parse_positive_int(const std::string& s, const std::string& field) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(field, "expected an integer, got '" + s + "'");
}

struct BuiltGraph {
    Graph graph;
    int param;
    std::string family;
};

Graph topology_for(const std::string& family, const std::vector<std::string>& args, const std::string& field) {
    auto arg_int = [&](std::size_t i) {
        if (i >= args.size()) throw ConfigError(field, "family '" + family + "' needs a size parameter");
        return parse_positive_int(args[i], field);
    };
    if (family == "complete") return make_complete(arg_int(0), 1.0);
    if (family == "cycle") return make_cycle(arg_int(0), 1.0);
    if (family == "half_complete_cycle" || family == "hcc") return make_half_complete_cycle(arg_int(0), 1.0);
    if (family == "random") {
        const double p = args.size() > 1 ? std::stod(args[1]) : 0.5;
        const std::uint64_t seed = args.size() > 2 ? std::stoull(args[2]) : 0;
        return make_random_connected(arg_int(0), p, 1.0, seed);
    }
    throw ConfigError(field, "unknown graph family '" + family + "'");
}

BuiltGraph build_graph(const std::string& spec, const RunConfig& c, const std::string& field) {
    if (spec.empty()) throw ConfigError(field, "a graph is required");
    if (c.rate && !c.rate_policy.empty()) throw ConfigError("rate", "give either --rate or --rate-policy, not both");
    return for_field(field, [&]() -> BuiltGraph {
        if (spec[0] == '@') {
            Graph g = load_graph_file(spec.substr(1));
            if (c.rate) g = for_field("rate", [&] { return with_uniform_rate(g, *c.rate); });
            if (!c.rate_policy.empty()) {
                const RatePolicy policy = for_field("rate_policy", [&] { return parse_rate_policy(c.rate_policy); });
                g = for_field("rate_policy", [&] { return with_uniform_rate(g, policy.rate_for(g.n(), g)); });
            }
            return {g, g.n(), "file"};
        }
        const auto colon = spec.find(':');
        const std::string family = spec.substr(0, colon);
        std::vector<std::string> args;
        if (colon != std::string::npos) {
            std::stringstream ss(spec.substr(colon + 1));
            for (std::string item; std::getline(ss, item, ',');) args.push_back(item);
        }
        Graph top = topology_for(family, args, field);
        const int param = parse_positive_int(args.at(0), field);
        double rate = 1.0;
        if (c.rate) rate = *c.rate;
        if (!c.rate_policy.empty()) {
            const RatePolicy policy = for_field("rate_policy", [&] { return parse_rate_policy(c.rate_policy); });
            rate = for_field("rate_policy", [&] { return policy.rate_for(param, top); });
        }
        return {for_field("rate", [&] { return with_uniform_rate(top, rate); }), param, family};
    });
}

BooleanFunction build_function(const RunConfig& c, int n) {
    if (c.function.empty()) throw ConfigError("function", "this subcommand needs --function");
    return for_field("function", [&] { return make_function(n, c.function); });
}

std::vector<int> selected_levels(const RunConfig& c, int n) {
    if (c.level == "all") {
        std::vector<int> all(static_cast<std::size_t>(n + 1));
        for (int l = 0; l <= n; ++l) all[static_cast<std::size_t>(l)] = l;
        return all;
    }
    const int l = parse_positive_int(c.level, "level");
    if (l < 0 || l > n) throw ConfigError("level", "level " + c.level + " outside 0.." + std::to_string(n));
    return {l};
}

void require_times(const std::vector<double>& values, const std::string& field) {
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(field, "times must be finite and nonnegative");
}

void require_thresholds(const std::vector<double>& values, const std::string& field) {
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "thresholds must be positive");
}

std::string default_format(const RunConfig& c) {
    if (!c.format.empty()) return c.format;
    if (c.subcommand == "spectrum") return "csv";
    if (c.subcommand == "profile" && c.n_grid.empty()) return "csv";
    return "json";
}

json header(const RunConfig& c) {
    return {{"schema_version", kSchemaVersion}, {"command", c.subcommand}, {"config", to_json(c)}};
}

std::string csv_header(const RunConfig& c) {
    return "# schema_version=" + std::to_string(kSchemaVersion) + "\n# config=" + to_json(c).dump() + "\n";
}

json group_summary(const SpectralBasis& b) {
    json groups = json::array();
    for (int id = 0; id < b.group_count(); ++id)
        groups.push_back({{"eigenvalue", b.group_eigenvalue(id)}, {"multiplicity", b.group(id).size()}});
    return groups;
}

struct Output {
    std::string text;
    int status = 0;
};

Output run_spectrum(const RunConfig& c, const std::string& format) {
    const BuiltGraph bg = build_graph(c.graph, c, "graph");
    const Graph& g = bg.graph;
    const auto levels = selected_levels(c, g.n());
    std::vector<SpectralBasis> bases;
    for_field("graph", [&] {
        if (levels.size() > 1) {
            bases = decompose_all_levels(g);
        } else {
            bases.push_back(eigendecompose(build_level_generator(g, levels[0])));
        }
        return 0;
    });
    if (!c.dump_matrix.empty()) {
        if (levels.size() != 1) throw ConfigError("dump_matrix", "needs a single --level");
        std::ofstream os(c.dump_matrix);
        if (!os) throw ConfigError("dump_matrix", "cannot write " + c.dump_matrix);
        write_matrix_csv(os, build_level_generator(g, levels[0]));
    }
    auto basis_for = [&](int level) -> const SpectralBasis& {
        return levels.size() > 1 ? bases[static_cast<std::size_t>(level)] : bases[0];
    };
    if (format == "csv") {
        std::string s = csv_header(c) + "level,index,eigenvalue,multiplicity_group_id\n";
        for (int level : levels) {
            const auto& b = basis_for(level);
            for (std::size_t i = 0; i < b.size(); ++i)
                s += std::to_string(level) + "," + std::to_string(i) + "," +
                     fmt12(b.eigenvalues[static_cast<Eigen::Index>(i)]) + "," + std::to_string(b.group_ids[i]) + "\n";
        }
        return {s};
    }
    json j = header(c);
    j["graph"] = to_json(g);
    json arr = json::array();
    for (int level : levels) {
        const auto& b = basis_for(level);
        std::vector<double> ev(b.eigenvalues.data(), b.eigenvalues.data() + b.eigenvalues.size());
        arr.push_back({{"level", level}, {"size", b.size()}, {"eigenvalues", ev}, {"groups", group_summary(b)}});
    }
    j["levels"] = arr;
    return {j.dump(2) + "\n"};
}

std::vector<int> parse_grid(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("n_grid", "expected a:b, got '" + s + "'");
    const int a = parse_positive_int(s.substr(0, colon), "n_grid");
    const int b = parse_positive_int(s.substr(colon + 1), "n_grid");
    if (a < 1 || b < a) throw ConfigError("n_grid", "need 1 <= a <= b");
    std::vector<int> out;
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
}

Output run_sensitivity(const RunConfig& c, const std::string& format) {
    if (c.graph.empty()) throw ConfigError("graph", "a graph family is required");
    if (c.graph[0] == '@') throw ConfigError("graph", "--n-grid needs a graph family, not a file");
    if (c.function.empty()) throw ConfigError("function", "this subcommand needs --function");
    if (c.rate && !c.rate_policy.empty()) throw ConfigError("rate", "give either --rate or --rate-policy, not both");
    FamilySpec family;
    family.graph_family = c.graph.substr(0, c.graph.find(':'));
    if (family.graph_family == "hcc") family.graph_family = "half_complete_cycle";
    family.function = c.function;
    if (!c.rate_policy.empty()) family.rate = for_field("rate_policy", [&] { return parse_rate_policy(c.rate_policy); });
    else if (c.rate) family.rate = {RatePolicy::Kind::Constant, *c.rate};
    const auto grid = parse_grid(c.n_grid);
    const std::vector<double> ks = c.k.empty() ? std::vector<double>{1.0} : c.k;
    require_thresholds(ks, "k");
    const SensitivityReport report = for_field("n_grid", [&] { return sensitivity_profile(family, grid, ks); });
    if (format == "csv") {
        std::string s = csv_header(c) + "n,k,variance,conditional_mean_variance,low_frequency_mass,tail_mass\n";
        for (const auto& r : report.records)
            for (std::size_t i = 0; i < ks.size(); ++i)
                s += std::to_string(r.param) + "," + fmt12(ks[i]) + "," + fmt12(r.variance) + "," +
                     fmt12(r.conditional_mean_variance) + "," + fmt12(r.low_mass[i]) + "," + fmt12(r.tail_mass[i]) + "\n";
        if (report.truncated) s += "# truncated at n=" + std::to_string(report.truncated_at) + "\n";
        return {s};
    }
    json j = header(c);
    j.update(to_json(report));
    return {j.dump(2) + "\n"};
}

Output run_profile(const RunConfig& c, const std::string& format) {
    if (!c.n_grid.empty()) return run_sensitivity(c, format);
    const BuiltGraph bg = build_graph(c.graph, c, "graph");
    const BooleanFunction f = build_function(c, bg.graph.n());
    require_thresholds(c.k, "k");
    const SpectralProfile p = for_field("graph", [&] { return spectral_profile(f, decompose_all_levels(bg.graph)); });
    if (format == "csv") {
        std::ostringstream os;
        os << csv_header(c);
        write_profile_csv(os, p);
        return {os.str()};
    }
    json j = header(c);
    j["summary"] = profile_summary_json(p);
    j["zero_mass"] = zero_mass(p);
    json entries = json::array();
    for (const auto& e : p.entries)
        entries.push_back({{"level", e.level}, {"index", e.index}, {"eigenvalue", e.eigenvalue}, {"coefficient", e.coefficient}});
    j["entries"] = entries;
    json thresholds = json::array();
    for (double k : c.k)
        thresholds.push_back({{"k", k}, {"low_frequency_mass", low_frequency_mass(p, k)}, {"tail_mass", tail_mass(p, k)}});
    if (!c.k.empty()) j["thresholds"] = thresholds;
    return {j.dump(2) + "\n"};
}

Output run_exact(const RunConfig& c, const std::string& format) {
    const BuiltGraph bg = build_graph(c.graph, c, "graph");
    const BooleanFunction f = build_function(c, bg.graph.n());
    if (c.t.empty() && c.eps.empty()) throw ConfigError("t", "give --t and/or --eps");
    require_times(c.t, "t");
    require_times(c.eps, "eps");
    if (!c.eps.empty() && !f.is_boolean()) throw ConfigError("function", "flip probabilities need a Boolean function");
    const SpectralProfile p = for_field("graph", [&] { return spectral_profile(f, decompose_all_levels(bg.graph)); });
    if (format == "csv") {
        std::string s = csv_header(c) + "quantity,time,value\n";
        for (double t : c.t) s += "correlation," + fmt12(t) + "," + fmt12(exact_correlation(p, t)) + "\n";
        for (double t : c.t) s += "covariance," + fmt12(t) + "," + fmt12(exact_covariance(p, t)) + "\n";
        for (double e : c.eps) s += "flip_probability," + fmt12(e) + "," + fmt12(exact_flip_probability(p, e)) + "\n";
        return {s};
    }
    json j = header(c);
    j["mean"] = p.mean;
    j["variance"] = p.total_mass - p.mean * p.mean;
    j["conditional_mean_variance"] = p.conditional_mean_variance;
    json cov = json::array();
    for (double t : c.t)
        cov.push_back({{"t", t}, {"correlation", exact_correlation(p, t)}, {"covariance", exact_covariance(p, t)}});
    json flip = json::array();
    for (double e : c.eps) flip.push_back({{"eps", e}, {"flip_probability", exact_flip_probability(p, e)}});
    j["covariance"] = cov;
    j["flip_probability"] = flip;
    return {j.dump(2) + "\n"};
}

Output run_simulate(const RunConfig& c, const std::string& format) {
    const BuiltGraph bg = build_graph(c.graph, c, "graph");
    const BooleanFunction f = build_function(c, bg.graph.n());
    if (c.t.empty() && c.eps.empty()) throw ConfigError("t", "give --t and/or --eps");
    require_times(c.t, "t");
    require_times(c.eps, "eps");
    if (c.samples == 0) throw ConfigError("samples", "must be at least 1");
    if (!c.eps.empty() && !f.is_boolean()) throw ConfigError("function", "flip probabilities need a Boolean function");
    InitialDistribution init = InitialDistribution::uniform();
    if (c.level != "all") {
        const int l = parse_positive_int(c.level, "level");
        if (l < 0 || l > bg.graph.n()) throw ConfigError("level", "outside 0..n");
        init = InitialDistribution::on_level(l);
    }
    // Each estimate gets its own seed so adding a time leaves the others unchanged.
    std::vector<EstimateResult> cov, flip;
    for (std::size_t i = 0; i < c.t.size(); ++i)
        cov.push_back(estimate_covariance({bg.graph, c.t[i], init, c.seed + i, c.samples}, f));
    for (std::size_t i = 0; i < c.eps.size(); ++i)
        flip.push_back(estimate_flip_probability({bg.graph, c.eps[i], init, c.seed + c.t.size() + i, c.samples}, f));
    if (format == "csv") {
        std::string s = csv_header(c) + "quantity,time,estimate,std_error,samples\n";
        for (std::size_t i = 0; i < cov.size(); ++i)
            s += "covariance," + fmt12(c.t[i]) + "," + fmt12(cov[i].point) + "," + fmt12(cov[i].std_error) + "," +
                 std::to_string(cov[i].samples) + "\n";
        for (std::size_t i = 0; i < flip.size(); ++i)
            s += "flip_probability," + fmt12(c.eps[i]) + "," + fmt12(flip[i].point) + "," + fmt12(flip[i].std_error) +
                 "," + std::to_string(flip[i].samples) + "\n";
        return {s};
    }
    json j = header(c);
    json jc = json::array(), jf = json::array();
    for (std::size_t i = 0; i < cov.size(); ++i)
        jc.push_back({{"t", c.t[i]}, {"estimate", cov[i].point}, {"std_error", cov[i].std_error}, {"samples", cov[i].samples}});
    for (std::size_t i = 0; i < flip.size(); ++i)
        jf.push_back({{"eps", c.eps[i]}, {"estimate", flip[i].point}, {"std_error", flip[i].std_error}, {"samples", flip[i].samples}});
    j["covariance"] = jc;
    j["flip_probability"] = jf;
    return {j.dump(2) + "\n"};
}

Output run_verify(const RunConfig& c, const std::string& format) {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end())
        throw ConfigError("suite", "unknown suite '" + c.suite + "'");
    if (c.nmax < 2 || c.nmax > 12) throw ConfigError("nmax", "must lie in 2..12");
    const auto checks = run_suite(c.suite, c.nmax, c.seed);
    std::uint64_t violations = 0;
    for (const auto& ch : checks) violations += ch.violations;
    const int status = violations == 0 ? 0 : 1;
    if (format == "csv") {
        std::string s = csv_header(c) + "name,instances,violations,max_residual\n";
        for (const auto& ch : checks)
            s += ch.name + "," + std::to_string(ch.instances) + "," + std::to_string(ch.violations) + "," +
                 fmt12(ch.max_residual) + "\n";
        return {s, status};
    }
    json j = header(c);
    json arr = json::array();
    for (const auto& ch : checks) arr.push_back(to_json(ch));
    j["checks"] = arr;
    j["total_violations"] = violations;
    j["passed"] = violations == 0;
    return {j.dump(2) + "\n", status};
}

Output run_compare(const RunConfig& c, const std::string& format) {
    if (format != "json") throw ConfigError("format", "compare writes JSON only");
    const BuiltGraph a = build_graph(c.graph, c, "graph");
    if (c.graph2.empty()) throw ConfigError("graph2", "compare needs --graph2");
    const BuiltGraph b = build_graph(c.graph2, c, "graph2");
    if (a.graph.n() != b.graph.n()) throw ConfigError("graph2", "graphs have different vertex counts");
    const std::vector<double> ks = c.k.empty() ? std::vector<double>{1.0} : c.k;
    require_thresholds(ks, "k");
    require_thresholds(c.kprime, "kprime");
    std::vector<std::pair<double, double>> pairs;
    for (double k : ks) {
        if (c.kprime.empty()) pairs.emplace_back(k, 2.0 * k);
        for (double kp : c.kprime) pairs.emplace_back(k, kp);
    }
    const int n = a.graph.n();
    const auto levels = selected_levels(c, n);
    const ComparisonBases bases = for_field("graph", [&] { return prepare_comparison(a.graph, b.graph); });

    int status = 0;
    json j = header(c);
    j["graph"] = to_json(a.graph);
    j["graph2"] = to_json(b.graph);

    const bool uniform = a.graph.uniform_rate() && b.graph.uniform_rate();
    if (is_complete(a.graph) && uniform) {
        json arr = json::array();
        for (auto [k, kp] : pairs) {
            for (int level : levels) {
                json row = {{"level", level}, {"k", k}, {"kprime", kp}};
                try {
                    const double r = containment_residual(bases, level, k, kp);
                    row["residual"] = r;
                    if (r > 1e-8) status = 1;
                } catch (const HypothesisViolation& e) {
                    row["refused"] = e.what();
                }
                arr.push_back(row);
            }
        }
        j["containment"] = arr;
    } else {
        j["containment"] = "skipped: needs a complete first graph and uniform rates";
    }

    const bool nested = is_rated_subgraph(b.graph, a.graph);
    if (nested) {
        json dom = json::array();
        for (int level : levels) {
            const double v = spectrum_dominance_violation(a.graph, b.graph, level);
            dom.push_back({{"level", level}, {"violation", v}});
            if (v > 1e-10) status = 1;
        }
        j["spectrum_dominance"] = dom;
    }

    if (!c.function.empty()) {
        const BooleanFunction f = build_function(c, n);
        if (nested) {
            const SpectralProfile pa = spectral_profile(f, bases.first_bases);
            const SpectralProfile pb = spectral_profile(f, bases.second_bases);
            json arr = json::array();
            for (auto [k, kp] : pairs) {
                const auto s = monotonicity_inequality_check(pa, pb, k, kp);
                const bool holds = s.lhs <= s.rhs + 1e-10;
                if (!holds) status = 1;
                arr.push_back({{"k", k}, {"kprime", kp}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"holds", holds}});
            }
            j["monotonicity"] = arr;
        } else {
            j["monotonicity"] = "skipped: graph2 is not a rated subgraph of graph";
        }
        json arr = json::array();
        for (double k : ks) {
            json row = {{"k", k}};
            try {
                const auto s = projection_mass_inequality(bases, f, k);
                const bool holds = s.rhs <= s.lhs + 1e-10;
                if (!holds) status = 1;
                row["lhs"] = s.lhs;
                row["rhs"] = s.rhs;
                row["holds"] = holds;
            } catch (const InvalidParameter& e) {
                row["refused"] = e.what();
            }
            arr.push_back(row);
        }
        j["projection_mass"] = arr;
    }
    return {j.dump(2) + "\n", status};
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
    json j = {{"subcommand", c.subcommand}};
    if (!c.graph.empty()) j["graph"] = c.graph;
    if (!c.graph2.empty()) j["graph2"] = c.graph2;
    if (c.rate) j["rate"] = *c.rate;
    if (!c.rate_policy.empty()) j["rate_policy"] = c.rate_policy;
    j["level"] = c.level;
    if (!c.function.empty()) j["function"] = c.function;
    if (!c.t.empty()) j["t"] = c.t;
    if (!c.eps.empty()) j["eps"] = c.eps;
    if (!c.k.empty()) j["k"] = c.k;
    if (!c.kprime.empty()) j["kprime"] = c.kprime;
    if (!c.n_grid.empty()) j["n_grid"] = c.n_grid;
    if (c.subcommand == "simulate" || c.subcommand == "verify") j["seed"] = c.seed;
    if (c.subcommand == "simulate") j["samples"] = c.samples;
    if (c.subcommand == "verify") {
        j["suite"] = c.suite;
        j["nmax"] = c.nmax;
    }
    return j;
}

void apply_config_json(RunConfig& c, const nlohmann::json& j, const std::vector<std::string>& skip) {
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    auto numbers = [](const json& v) {
        std::vector<double> out;
        if (v.is_array()) {
            for (const auto& x : v) out.push_back(x.get<double>());
        } else {
            out.push_back(v.get<double>());
        }
        return out;
    };
    for (const auto& [key, v] : j.items()) {
        if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
        try {
            if (key == "subcommand") c.subcommand = v.get<std::string>();
            else if (key == "graph") c.graph = v.get<std::string>();
            else if (key == "graph2") c.graph2 = v.get<std::string>();
            else if (key == "rate") c.rate = v.get<double>();
            else if (key == "rate_policy") c.rate_policy = v.get<std::string>();
            else if (key == "level") c.level = v.is_number() ? std::to_string(v.get<int>()) : v.get<std::string>();
            else if (key == "function") c.function = v.get<std::string>();
            else if (key == "t") c.t = numbers(v);
            else if (key == "eps") c.eps = numbers(v);
            else if (key == "k") c.k = numbers(v);
            else if (key == "kprime") c.kprime = numbers(v);
            else if (key == "n_grid") c.n_grid = v.get<std::string>();
            else if (key == "samples") c.samples = v.get<std::uint64_t>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "format") c.format = v.get<std::string>();
            else if (key == "out") c.out = v.get<std::string>();
            else if (key == "suite") c.suite = v.get<std::string>();
            else if (key == "nmax") c.nmax = v.get<int>();
            else if (key == "dump_matrix") c.dump_matrix = v.get<std::string>();
            else throw ConfigError(key, "unknown config key");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(key, std::string("wrong type: ") + e.what());
        }
    }
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
    RunConfig c;
    CLI::App app{"Symmetric exclusion process spectra, profiles and simulations", "xproc"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    for (const auto& name : kSubcommands) app.add_subcommand(name);

    std::string config_path;
    double rate = 0.0;
    std::map<std::string, CLI::Option*> opts;
    opts["graph"] = app.add_option("--graph", c.graph, "family:params or @file.json");
    opts["graph2"] = app.add_option("--graph2", c.graph2, "second graph for compare");
    opts["rate"] = app.add_option("--rate", rate, "uniform edge rate");
    opts["rate_policy"] = app.add_option("--rate-policy", c.rate_policy, "1/n, 1/d, 1/p, 1/(p-1) or a number");
    opts["level"] = app.add_option("--level", c.level, "level number or all");
    opts["function"] = app.add_option("--function", c.function, "family:params or @table.json");
    opts["t"] = app.add_option("--t", c.t, "times")->delimiter(',');
    opts["eps"] = app.add_option("--eps", c.eps, "flip times")->delimiter(',');
    opts["k"] = app.add_option("--k", c.k, "eigenvalue thresholds")->delimiter(',');
    opts["kprime"] = app.add_option("--kprime", c.kprime, "second thresholds")->delimiter(',');
    opts["n_grid"] = app.add_option("--n-grid", c.n_grid, "a:b");
    opts["samples"] = app.add_option("--samples", c.samples, "Monte Carlo samples");
    opts["seed"] = app.add_option("--seed", c.seed, "64-bit seed");
    opts["format"] = app.add_option("--format", c.format, "json or csv");
    opts["out"] = app.add_option("--out", c.out, "output path");
    opts["suite"] = app.add_option("--suite", c.suite, "verify suite");
    opts["nmax"] = app.add_option("--nmax", c.nmax, "largest n for verify");
    opts["dump_matrix"] = app.add_option("--dump-matrix", c.dump_matrix, "write the level generator as CSV");
    app.add_option("--config", config_path, "JSON file mirroring the flags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ExtrasError& e) {
        throw ConfigError(app.get_subcommands().empty() ? "subcommand" : "arguments", e.what());
    } catch (const CLI::ParseError& e) {
        std::string field = "arguments";
        const std::string msg = e.what();
        for (const auto& [name, opt] : opts)
            if (msg.find(opt->get_name()) != std::string::npos) field = name;
        throw ConfigError(field, msg);
    }
    if (opts["rate"]->count() > 0) c.rate = rate;
    for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("config", "cannot open " + config_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ConfigError("config", e.what());
        }
        std::vector<std::string> given;
        for (const auto& [name, opt] : opts)
            if (opt->count() > 0) given.push_back(name);
        if (!c.subcommand.empty()) given.push_back("subcommand");
        apply_config_json(c, j, given);
    }
    if (c.subcommand.empty()) throw ConfigError("subcommand", "expected one of spectrum, profile, exact, simulate, verify, compare");
    if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end())
        throw ConfigError("subcommand", "unknown subcommand '" + c.subcommand + "'");
    return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Output result;
    try {
        const std::string format = default_format(config);
        if (format != "json" && format != "csv") throw ConfigError("format", "expected json or csv");
        if (config.subcommand == "spectrum") result = run_spectrum(config, format);
        else if (config.subcommand == "profile") result = run_profile(config, format);
        else if (config.subcommand == "exact") result = run_exact(config, format);
        else if (config.subcommand == "simulate") result = run_simulate(config, format);
        else if (config.subcommand == "verify") result = run_verify(config, format);
        else if (config.subcommand == "compare") result = run_compare(config, format);
        else throw ConfigError("subcommand", "unknown subcommand '" + config.subcommand + "'");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    if (config.out.empty()) {
        out << result.text;
    } else {
        std::ofstream os(config.out, std::ios::binary);
        if (!os) {
            err << "error: out: cannot write " << config.out << "\n";
            return 2;
        }
        os << result.text;
    }
    return result.status;
}

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> config;
    try {
        config = parse_command_line(argc, argv, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (!config) return 0;
    return run(*config, out, err);
}

}  // namespace xproc
