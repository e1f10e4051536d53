#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace xproc {

inline constexpr int kSchemaVersion = 1;

// A bad command line or config file; `field` names the offending input.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct RunConfig {
    std::string subcommand;
    std::string graph;    // family:params or @file.json
    std::string graph2;   // second graph for compare
    std::optional<double> rate;
    std::string rate_policy;
    std::string level = "all";
    std::string function;
    std::vector<double> t;
    std::vector<double> eps;
    std::vector<double> k;
    std::vector<double> kprime;
    std::string n_grid;   // "a:b"
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::string format;   // json | csv; empty picks the subcommand default
    std::string out;
    std::string suite = "all";
    int nmax = 8;
    std::string dump_matrix;
};

nlohmann::json to_json(const RunConfig& c);

// Fills every field present in `j`; unknown keys throw ConfigError.
void apply_config_json(RunConfig& c, const nlohmann::json& j, const std::vector<std::string>& skip = {});

// Throws ConfigError. `--help` returns std::nullopt after printing usage.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

// Exit codes: 0 success, 1 verification failure, 2 configuration error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xproc
