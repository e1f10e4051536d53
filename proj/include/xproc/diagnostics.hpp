#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "xproc/fourier.hpp"
#include "xproc/graph.hpp"
#include "xproc/spectral.hpp"

namespace xproc {

// One named property checked over many instances.
struct CheckResult {
    std::string name;
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;
    double max_residual = 0.0;
    // First few failing instances, for the report.
    std::vector<nlohmann::json> failures;

    // Records one instance; `ok` decides whether it counts as a violation.
    void record(bool ok, double residual, const nlohmann::json& instance = {});
    bool passed() const { return violations == 0; }
};

nlohmann::json to_json(const CheckResult& c);

// How the rate of each graph in a family is chosen from the family
// parameter p and the built graph.
struct RatePolicy {
    enum class Kind { Constant, InverseVertices, InverseMaxDegree, InverseParam, InverseParamMinusOne };
    Kind kind = Kind::Constant;
    double value = 1.0;

    double rate_for(int param, const Graph& topology) const;
    std::string describe() const;
};

// "<number>", "1/n" | "one-over-n", "1/d" | "one-over-max-degree", "1/p", "1/(p-1)".
RatePolicy parse_rate_policy(const std::string& s);

// "complete" and "cycle" have p vertices; "half_complete_cycle", "cycle2"
// and "complete2" have 2p, so the three line up as nested graphs.
Graph make_family_graph(const std::string& family, int param, const RatePolicy& rate);

struct FamilySpec {
    std::string graph_family;
    RatePolicy rate;
    std::string function;  // make_function family string
};

struct SensitivityRecord {
    int param = 0;
    int vertices = 0;
    double rate = 0.0;
    double variance = 0.0;
    double conditional_mean_variance = 0.0;
    double zero_mass = 0.0;
    double total_mass = 0.0;
    std::vector<double> low_mass;   // per k: 0 < lambda <= k
    std::vector<double> tail_mass;  // per k: lambda >= k
    double decomposition_residual = 0.0;
};

struct SensitivityReport {
    FamilySpec family;
    std::vector<int> n_grid;
    std::vector<double> k_grid;
    std::vector<SensitivityRecord> records;
    // Set when some grid point exceeded the state cap; records stop there.
    bool truncated = false;
    int truncated_at = 0;
    std::string truncation_reason;
    // Per k: "nonincreasing", "nondecreasing", "constant" or "mixed" over n.
    std::vector<std::string> low_mass_trend;
    std::vector<std::string> tail_mass_trend;
    std::vector<CheckResult> checks;
};

SensitivityReport sensitivity_profile(const FamilySpec& family, const std::vector<int>& n_grid,
                                      const std::vector<double>& k_grid);

nlohmann::json to_json(const SensitivityReport& r);

// Level bases for a pair of graphs on the same vertices, computed once and
// reused across thresholds. `first` is the complete/larger graph.
struct ComparisonBases {
    Graph first;
    Graph second;
    std::vector<SpectralBasis> first_bases;
    std::vector<SpectralBasis> second_bases;
};

// When `first` is complete its bases come from complete_graph_basis.
ComparisonBases prepare_comparison(const Graph& first, const Graph& second);

// Largest pi-norm of the part of a psi (0 < lambda <= k, complete graph
// `complete` at rate alpha) lying outside span{chi : mu <= 2 beta k' d}
// of `general` at rate beta. Throws InvalidParameter when the first graph
// is not complete or rates are not uniform, HypothesisViolation when
// alpha k'(n - k' + 1) < k.
double containment_residual(const Graph& complete, const Graph& general, int level, double k, double kprime);
double containment_residual(const ComparisonBases& bases, int level, double k, double kprime);

struct InequalitySides {
    double lhs = 0.0;
    double rhs = 0.0;
};

// lhs = mass of f with 0 < mu <= 4k under `general` (rate 1/max_degree),
// rhs = mass with 0 < lambda <= k under K_n at rate 1/n. Requires k <= n/4.
InequalitySides projection_mass_inequality(const Graph& general, const BooleanFunction& f, double k);
InequalitySides projection_mass_inequality(const ComparisonBases& bases, const BooleanFunction& f, double k);

// lhs = sum_{mu > k'} <f,chi>^2 under `sub`,
// rhs = (sqrt(k/k' sum_{0<lambda<=k} <f,psi>^2) + sqrt(sum_{lambda>k} <f,psi>^2))^2 under `super`.
// `sub` must be a rated subgraph of `super`; both connected.
InequalitySides monotonicity_inequality_check(const Graph& super, const Graph& sub, const BooleanFunction& f,
                                              double k, double kprime);
InequalitySides monotonicity_inequality_check(const SpectralProfile& super_profile,
                                              const SpectralProfile& sub_profile, double k, double kprime);

// max_i (lambda_i(sub) - lambda_i(super)) over sorted level spectra, floored
// at 0. Adding edges at equal rates never lowers an eigenvalue, so this is
// ~0 whenever `sub` is a rated subgraph of `super`.
double spectrum_dominance_violation(const Graph& super, const Graph& sub, int level);

}  // namespace xproc
