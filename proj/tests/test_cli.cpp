#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "skewflow/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = SKEWFLOW_TEST_DATA;

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "skewflow_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(std::vector<std::string> args)
{
    args.insert(args.begin(), "skewflow");
    return skewflow::cli::run(args);
}

std::string config(const char* name) { return (kData / name).string(); }

} // namespace

TEST_CASE("validate rejects the identity")
{
    CHECK(run({"validate", "--config", config("identity.json"), "--json-errors"}) == 1);
}

TEST_CASE("validate reports the filtration")
{
    const fs::path out = scratch("validate.json");
    REQUIRE(run({"validate", "--config", config("t3_example.json"), "--out", out.string()}) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("nilpotency_degree") == 2);
    CHECK(j.at("d0") == 2);
    CHECK(j.at("shear_vector").at("a") == 2);
}

TEST_CASE("coboundary verdict on the T3 example")
{
    const fs::path out = scratch("coboundary.json");
    REQUIRE(run({"coboundary", "--config", config("t3_example.json"), "--out", out.string()}) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("verdict").get<bool>());
    CHECK(j.at("max_obstruction").get<double>() < 1e-12);
}

TEST_CASE("solve, membership and gen-mixing emit parseable JSON")
{
    for (const char* cmd : {"solve", "membership", "gen-mixing"}) {
        const fs::path out = scratch(std::string(cmd) + ".json");
        REQUIRE(run({cmd, "--config", config("t3_example.json"), "--out", out.string()}) == 0);
        CHECK(nlohmann::json::parse(slurp(out)).is_object());
    }
    const auto m = nlohmann::json::parse(slurp(scratch("membership.json")));
    CHECK(m.at("member").get<bool>());
    const auto s = nlohmann::json::parse(slurp(scratch("solve.json")));
    CHECK(s.at("grid_residual").get<double>() < 1e-9);
}

TEST_CASE("correlation output is byte-identical across runs")
{
    const fs::path a = scratch("corr_a.csv");
    const fs::path b = scratch("corr_b.csv");
    REQUIRE(run({"correlation", "--config", config("heisenberg_correlation.json"), "--out", a.string()}) == 0);
    REQUIRE(run({"correlation", "--config", config("heisenberg_correlation.json"), "--out", b.string(),
                 "--threads", "3"}) == 0);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.rfind("# skewflow correlation\n# config_hash=fnv1a64:", 0) == 0);
    CHECK(text.find("# seed=20240601\n") != std::string::npos);

    const fs::path c = scratch("corr_c.csv");
    REQUIRE(run({"correlation", "--config", config("heisenberg_correlation.json"), "--out", c.string(), "--seed",
                 "5"}) == 0);
    CHECK(slurp(c) != text);
}

TEST_CASE("stochastic subcommands and numeric series")
{
    for (auto [cmd, cfg] : {std::pair{"simulate", "heisenberg_simulate.json"}, std::pair{"growth", "t3_growth.json"},
                            std::pair{"decoupling", "t3_growth.json"}, std::pair{"stretch", "heisenberg_stretch.json"}}) {
        const fs::path out = scratch(std::string(cmd) + ".csv");
        CHECK(run({cmd, "--config", config(cfg), "--out", out.string(), "--threads", "2"}) == 0);
        const std::string text = slurp(out);
        CHECK(text.rfind("# skewflow ", 0) == 0);
    }
}

TEST_CASE("nilflow subcommands")
{
    const fs::path sec = scratch("section.json");
    REQUIRE(run({"nilflow-section", "--config", config("nilflow.json"), "--out", sec.string()}) == 0);
    const auto j = nlohmann::json::parse(slurp(sec));
    CHECK(j.at("system").at("matrix") == nlohmann::json::parse("[[1,-2,3],[0,1,-3],[0,0,1]]"));
    CHECK(j.at("return_time") == 1.0);
    // The emitted system is itself a valid config.
    const fs::path cfg = scratch("section_config.json");
    std::ofstream(cfg) << nlohmann::json{{"system", j.at("system")}}.dump();
    CHECK(run({"validate", "--config", cfg.string(), "--out", scratch("section_validate.json").string()}) == 0);

    const fs::path tc = scratch("timechange.json");
    REQUIRE(run({"timechange", "--config", config("nilflow.json"), "--out", tc.string()}) == 0);
    CHECK(nlohmann::json::parse(slurp(tc)).at("residual").get<double>() < 1e-9);
}

TEST_CASE("errors and exit codes")
{
    CHECK(run({"bogus", "--config", config("t3_example.json")}) == 1);
    CHECK(run({"validate", "--config", "/nonexistent.json"}) == 1);
    // no seed in this config
    CHECK(run({"growth", "--config", config("t3_example.json")}) == 1);
    const fs::path bad = scratch("bad_translation.json");
    std::ofstream(bad) << R"({"system": {"matrix": [[1, 1], [0, 1]], "translation": ["0.1x", "0.2"]}})";
    CHECK(run({"validate", "--config", bad.string()}) == 1);
}
