#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "xproc/spectral.hpp"

namespace xproc {

// A function on {0,1}^n stored as a full table indexed by the bit word.
// In Boolean mode every value is 0 or 1.
class BooleanFunction {
public:
    BooleanFunction(int n, std::vector<double> values, std::string name = {});

    int n() const { return n_; }
    const std::vector<double>& values() const { return values_; }
    double operator()(std::uint64_t x) const { return values_[x]; }
    bool is_boolean() const { return boolean_; }
    const std::string& name() const { return name_; }

    // Restriction to one level, in LevelStateSpace order.
    LevelFunction restrict_to(const LevelStateSpace& space) const;

    double mean() const;            // E[f] under the uniform measure
    double second_moment() const;   // <f,f> = 2^-n sum f^2

private:
    int n_;
    std::vector<double> values_;
    bool boolean_;
    std::string name_;
};

inline constexpr int kMaxFunctionVertices = 20;

BooleanFunction make_dictator(int n, Vertex v);
// Indicator version (1 - (-1)^|x cap S|)/2 of the parity on S.
BooleanFunction make_parity(int n, const std::vector<Vertex>& set);
// 1 iff strictly more than half of the vertices are black.
BooleanFunction make_majority(int n);
BooleanFunction make_constant(int n, double c);
BooleanFunction make_table(int n, std::vector<double> values);

// Parity set used with the half complete cycle on 2*half vertices: the even
// indices below `half` (labels 1,3,... of the lower arc, 0-based).
std::vector<Vertex> alternating_lower_set(int half);

// Family strings: "dictator:v", "parity:a,b,c", "parity-lower-odd"
// (alternating_lower_set(n/2)), "majority", "constant:c", "@table.json".
BooleanFunction make_function(int n, const std::string& spec);

struct ProfileEntry {
    int level;
    int index;
    double eigenvalue;
    double coefficient;  // f^(i, l) against the full-space lifted basis
};

struct SpectralProfile {
    int n = 0;
    bool boolean = false;
    std::vector<ProfileEntry> entries;
    double total_mass = 0.0;                  // <f,f>
    double mean = 0.0;                        // E[f]
    double conditional_mean_variance = 0.0;   // Var(E[f | |X|])
};

// Coefficients against psi_{i,l} = sqrt(2^n / binom(n,l)) psi_i^(l) on level
// l. `bases` must hold levels 0..n in order.
SpectralProfile spectral_profile(const BooleanFunction& f, const std::vector<SpectralBasis>& bases);

// Sum over the kernel entries of f^2 (equals sum_l P(l) E[f|l]^2).
double zero_mass(const SpectralProfile& p);

// E[f(X_0) f(X_t)] = sum exp(-t lambda) f^2.
double exact_correlation(const SpectralProfile& p, double t);
// Cov(f(X_0), f(X_t)).
double exact_covariance(const SpectralProfile& p, double t);
// P(f(X_0) != f(X_eps)) = 2 sum (1 - exp(-eps lambda)) f^2. Boolean only.
double exact_flip_probability(const SpectralProfile& p, double eps);

// Mass with 0 < lambda <= k.
double low_frequency_mass(const SpectralProfile& p, double k);
// Mass with 0 < lambda < k.
double low_frequency_mass_strict(const SpectralProfile& p, double k);
// Mass with lambda >= k (nonzero eigenvalues only).
double tail_mass(const SpectralProfile& p, double k);
// Mass with lambda > k.
double mass_above(const SpectralProfile& p, double k);

struct EigenvalueMass {
    double eigenvalue;
    double mass;
};
// Mass merged across levels by eigenvalue (grouping tolerance), ascending.
std::vector<EigenvalueMass> mass_by_eigenvalue(const SpectralProfile& p);

// CSV rows (level, eigenvalue, coeff_sq), 12 significant digits.
void write_profile_csv(std::ostream& os, const SpectralProfile& p);
// {mean, variance, conditional_mean_variance, mass_by_eigenvalue:[...]}
nlohmann::json profile_summary_json(const SpectralProfile& p);

}  // namespace xproc
