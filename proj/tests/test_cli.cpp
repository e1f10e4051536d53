#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "xproc/cli.hpp"

using namespace xproc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "xproc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string body_after_header(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, body;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') body += line + "\n";
    return body;
}

}  // namespace

TEST_CASE("spectrum csv") {
    const Result r = call({"spectrum", "--graph", "complete:4", "--rate", "1", "--level", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# schema_version=1\n# config=", 0) == 0);
    CHECK(body_after_header(r.out) ==
          "level,index,eigenvalue,multiplicity_group_id\n2,0,0,0\n2,1,4,1\n2,2,4,1\n2,3,4,1\n2,4,6,2\n2,5,6,2\n");
}

TEST_CASE("spectrum json") {
    const Result r = call({"spectrum", "--graph", "cycle:4", "--rate", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["command"] == "spectrum");
    CHECK(j["levels"].size() == 5);
    CHECK(j["levels"][2]["eigenvalues"].size() == 6);
}

TEST_CASE("exact covariance at time zero") {
    const Result r = call({"exact", "--graph", "complete:3", "--rate", "1", "--function", "dictator:0", "--t", "0,1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["covariance"][0]["covariance"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(j["covariance"][1]["covariance"].get<double>() < 0.25);
    CHECK(j["covariance"][1]["covariance"].get<double>() > j["conditional_mean_variance"].get<double>());
}

TEST_CASE("profile with thresholds") {
    const Result r = call({"profile", "--graph", "cycle:6", "--rate", "0.5", "--function", "majority", "--k", "1,2",
                           "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("thresholds"));
    CHECK(j["thresholds"].size() == 2);
}

TEST_CASE("sensitivity grid") {
    const Result r = call({"profile", "--graph", "hcc:3", "--rate-policy", "1/(p-1)", "--function", "parity-lower-odd",
                           "--n-grid", "3:5", "--k", "2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["records"].size() == 3);
    CHECK(j["family"]["graph"] == "half_complete_cycle");
}

TEST_CASE("simulate is reproducible") {
    const std::vector<std::string> args{"simulate", "--graph", "cycle:6", "--rate", "1", "--function", "dictator:0",
                                        "--t", "0.5", "--eps", "0.2", "--samples", "2000", "--seed", "3"};
    const Result a = call(args), b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("verify is deterministic") {
    const std::vector<std::string> args{"verify", "--suite", "spectral", "--nmax", "6", "--seed", "7"};
    const Result a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["checks"].size() > 0);
}

TEST_CASE("compare") {
    const Result r = call({"compare", "--graph", "complete:6", "--rate-policy", "1/n", "--graph2", "cycle:6",
                           "--function", "majority", "--k", "1", "--kprime", "2"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("containment"));
    CHECK(j.contains("monotonicity"));
}

TEST_CASE("configuration errors name the field") {
    struct Case {
        std::vector<std::string> args;
        std::string field;
    };
    const std::vector<Case> cases{
        {{"spectrum", "--graph", "torus:4"}, "graph"},
        {{"spectrum", "--graph", "complete:-3"}, "graph"},
        {{"spectrum", "--graph", "complete:4", "--level", "9"}, "level"},
        {{"spectrum", "--graph", "complete:4", "--format", "xml"}, "format"},
        {{"spectrum", "--graph", "complete:4", "--rate", "1", "--rate-policy", "1/n"}, "rate"},
        {{"spectrum", "--graph", "complete:4", "--rate", "-1"}, "rate"},
        {{"exact", "--graph", "complete:4", "--function", "dictator:9", "--t", "1"}, "function"},
        {{"exact", "--graph", "complete:4", "--function", "dictator:0", "--t", "-1"}, "t"},
        {{"profile", "--graph", "cycle", "--function", "majority", "--n-grid", "5"}, "n_grid"},
        {{"verify", "--nmax", "40"}, "nmax"},
        {{"frobnicate"}, "subcommand"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.args[0]);
        CAPTURE(c.field);
        const Result r = call(c.args);
        CHECK(r.code == 2);
        CHECK(r.err.find(c.field) != std::string::npos);
    }
}

TEST_CASE("config files and output paths") {
    const std::string cfg = "cli_test_config.json";
    const std::string out = "cli_test_out.csv";
    {
        std::ofstream os(cfg);
        os << R"({"subcommand": "spectrum", "graph": "complete:4", "rate": 1, "level": 2, "format": "csv"})";
    }
    const Result a = call({"--config", cfg, "--out", out});
    REQUIRE(a.code == 0);
    CHECK(a.out.empty());
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    const Result direct = call({"spectrum", "--graph", "complete:4", "--rate", "1", "--level", "2"});
    CHECK(body_after_header(text.str()) == body_after_header(direct.out));

    // Flags override the file.
    const Result b = call({"--config", cfg, "--level", "1"});
    REQUIRE(b.code == 0);
    CHECK(body_after_header(b.out).find("\n1,3,") != std::string::npos);

    {
        std::ofstream os(cfg);
        os << R"({"subcommand": "spectrum", "graph": "complete:4", "colour": "red"})";
    }
    const Result bad = call({"--config", cfg});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("colour") != std::string::npos);
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("config round trip") {
    RunConfig c;
    c.subcommand = "exact";
    c.graph = "cycle:5";
    c.rate = 0.5;
    c.function = "majority";
    c.t = {0.1, 1.0};
    RunConfig d;
    apply_config_json(d, to_json(c));
    CHECK(to_json(d) == to_json(c));
}
