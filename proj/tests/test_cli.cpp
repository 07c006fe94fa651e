#include <fstream>

#include "doctest.h"

#include "cli_runner.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using testing::fixture;
using testing::run_cli;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("agrifoot_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

fs::path write_scenario(const fs::path& dir, const std::string& body)
{
    const fs::path p = dir / "scenario.json";
    std::ofstream(p) << body;
    fs::copy_file(fixture("cattle/catalog.json"), dir / "catalog.json", fs::copy_options::overwrite_existing);
    return p;
}

}  // namespace

TEST_CASE("validate accepts the shipped fixtures")
{
    const auto r = run_cli("validate " + quoted(fixture("cattle/high_pc.json")));
    CHECK(r.exit_code == 0);
    CHECK(r.output == "OK\n");
}

TEST_CASE("validate names uncovered sizes")
{
    const auto dir = scratch("gap");
    const auto cfg = write_scenario(dir, R"({"name": "gap", "size_unit": "heads",
        "distribution": {"inline": {"sizes": [10, 150], "counts": [1, 1]}},
        "catalog": "catalog.json", "profile": [{"ts": "TS_RFID", "a": 0, "b": 100}]})");
    const auto r = run_cli("validate " + quoted(cfg));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("ERROR") == 0);
    CHECK(r.output.find("150") != std::string::npos);

    const auto run = run_cli("run " + quoted(cfg) + " --out " + quoted(dir / "out"));
    CHECK(run.exit_code == 2);
}

TEST_CASE("configuration errors exit with 1")
{
    const auto dir = scratch("config");
    auto r = run_cli("run " + quoted(dir / "missing.json"));
    CHECK(r.exit_code == 1);
    const auto cfg = write_scenario(dir, R"({"name": "x", "size_unit": "heads",
        "distribution": {"inline": {"sizes": [10], "counts": [1]}},
        "catalog": "catalog.json", "full_deployment": "TS_RFID",
        "profile": [{"ts": "TS_RFID", "a": 0, "b": 100}]})");
    r = run_cli("run " + quoted(cfg));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("mutually exclusive") != std::string::npos);
}

TEST_CASE("a failing Monte Carlo exits with 3")
{
    const auto dir = scratch("abort");
    std::ofstream(dir / "catalog.json") << R"({"devices": [{"name": "heater", "kind": "fixed_per_farm",
        "active_power": 1e308, "active_hours_per_day": 24, "embodied_ghg": 1, "lifetime_years": 1}],
        "systems": [{"name": "TS", "devices": ["heater"]}]})";
    std::ofstream(dir / "scenario.json") << R"({"name": "abort", "size_unit": "heads",
        "distribution": {"inline": {"sizes": [10], "counts": [1]}},
        "catalog": "catalog.json", "full_deployment": "TS", "sensitivity": {"samples": 20}})";
    const auto r = run_cli("run " + quoted(dir / "scenario.json") + " --out " + quoted(dir / "out"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("output directory precedence and table format")
{
    const auto dir = scratch("outdir");
    auto r = run_cli("run " + quoted(fixture("minimal/scenario.json")),
                     "AGRIFOOT_OUTPUT_DIR=" + quoted(dir / "env"));
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "env" / "totals.csv"));
    r = run_cli("run " + quoted(fixture("minimal/scenario.json")) + " --out " + quoted(dir / "flag") +
                    " --format tsv",
                "AGRIFOOT_OUTPUT_DIR=" + quoted(dir / "env2"));
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "flag" / "totals.tsv"));
    CHECK_FALSE(fs::exists(dir / "env2"));
}

TEST_CASE("minimal scenario writes inventory, breakdowns, efficiency and baseline")
{
    const auto dir = scratch("minimal");
    const auto r = run_cli("run " + quoted(fixture("minimal/scenario.json")) + " --out " + quoted(dir));
    REQUIRE(r.exit_code == 0);
    for (const char* f : {"inventory.csv", "breakdown_device.csv", "efficiency.csv", "baseline.csv"})
        CHECK(fs::exists(dir / f));
}

TEST_CASE("compare puts scenarios side by side")
{
    const auto r = run_cli("compare " + quoted(fixture("cattle/full_rfid.json")) + " " +
                           quoted(fixture("cattle/full_pc.json")));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("metric,unit,cattle_full_rfid,cattle_full_pc") == 0);
    const auto mixed = run_cli("compare " + quoted(fixture("cattle/full_rfid.json")) + " " +
                               quoted(fixture("crop/mixed.json")));
    CHECK(mixed.exit_code == 1);
}

TEST_CASE("seed and thread count do not change results unless the seed changes")
{
    const auto dir = scratch("seed");
    const auto cfg = quoted(fixture("crop/sensitivity.json"));
    REQUIRE(run_cli("run " + cfg + " --threads 1 --out " + quoted(dir / "a")).exit_code == 0);
    REQUIRE(run_cli("run " + cfg + " --threads 4 --out " + quoted(dir / "b")).exit_code == 0);
    REQUIRE(run_cli("run " + cfg + " --seed 7 --out " + quoted(dir / "c")).exit_code == 0);
    CHECK(testing::same_tree(dir / "a", dir / "b"));
    CHECK_FALSE(testing::same_tree(dir / "a", dir / "c"));
}
