#include <fstream>

#include "doctest.h"

#include "agrifoot/errors.hpp"
#include "agrifoot/scenario.hpp"
#include "support.hpp"

using namespace agrifoot;
namespace fs = std::filesystem;

namespace {

double total_of(const char* fixture)
{
    return evaluate_scenario(load_scenario(testing::fixture(fixture))).result.totals.total_kg();
}

}  // namespace

TEST_CASE("cattle systems order by footprint")
{
    const double rfid = total_of("cattle/full_rfid.json");
    const double cc = total_of("cattle/full_cc.json");
    const double jn = total_of("cattle/full_jn.json");
    const double pc = total_of("cattle/full_pc.json");
    CHECK(rfid < cc);
    CHECK(cc < jn);
    CHECK(jn < pc);
    const double low = total_of("cattle/low_pc.json");
    const double high = total_of("cattle/high_pc.json");
    CHECK(low < high);
    CHECK(high < pc);
}

TEST_CASE("GPU workstations make use-phase emissions dominant")
{
    const auto run = evaluate_scenario(load_scenario(testing::fixture("cattle/full_pc.json")));
    CHECK(run.result.totals.use_kg > run.result.totals.embodied_kg);
    const auto cc = evaluate_scenario(load_scenario(testing::fixture("cattle/full_cc.json")));
    CHECK(cc.result.totals.use_kg < cc.result.totals.embodied_kg);
}

TEST_CASE("GPU workstations raise the use-phase share")
{
    const auto share = [](const char* f) {
        const auto t = evaluate_scenario(load_scenario(testing::fixture(f))).result.totals;
        return t.use_kg / t.total_kg();
    };
    CHECK(share("cattle/full_pc.json") > share("cattle/full_cc.json"));
}

TEST_CASE("average extrapolation misses robot fleets")
{
    for (const char* f : {"crop/full_br.json", "crop/full_ir.json", "crop/full_ar.json"}) {
        CAPTURE(f);
        const auto run = evaluate_scenario(load_scenario(testing::fixture(f)));
        for (const auto& row : run.baseline) CHECK(std::abs(row.relative_gap()) > 0.01);
    }
}

TEST_CASE("robot Monte Carlo: embodied spreads overlap, the battery robot draws least")
{
    const auto run = evaluate_scenario(load_scenario(testing::fixture("crop/sensitivity.json")));
    REQUIRE(run.sensitivity);
    const auto rows = summarize(*run.sensitivity);
    const auto find = [&](const std::string& ts, const std::string& metric) {
        for (const auto& r : rows)
            if (r.label == ts && r.metric == metric) return r;
        FAIL("missing summary row " << ts << " " << metric);
        return SummaryRow{};
    };
    for (const char* a : {"TS_BR", "TS_IR", "TS_AR"})
        for (const char* b : {"TS_BR", "TS_IR", "TS_AR"}) {
            CAPTURE(a);
            CAPTURE(b);
            CHECK(find(a, "embodied_kgCO2e_per_year").p5 < find(b, "embodied_kgCO2e_per_year").p95);
        }
    const double br_high = find("TS_BR", "energy_kWh_per_year").p95;
    CHECK(br_high < find("TS_IR", "energy_kWh_per_year").p5);
    CHECK(br_high < find("TS_AR", "energy_kWh_per_year").p5);
}

TEST_CASE("crop robots stay in the plausibility band")
{
    for (const char* f : {"crop/full_br.json", "crop/full_ir.json", "crop/full_ar.json", "crop/mixed.json"}) {
        CAPTURE(f);
        const double t = total_of(f);
        CHECK(t > 0.1e9);
        CHECK(t < 0.5e9);
    }
}

TEST_CASE("mixed crop deployment beats every single system")
{
    const double mixed = total_of("crop/mixed.json");
    for (const char* f : {"crop/full_br.json", "crop/full_ir.json", "crop/full_ar.json"}) {
        CAPTURE(f);
        CHECK(mixed <= total_of(f));
    }
}

TEST_CASE("baseline rows cover each system and the whole scenario")
{
    const auto run = evaluate_scenario(load_scenario(testing::fixture("cattle/low_pc.json")));
    REQUIRE(run.baseline.size() == 5);
    CHECK(run.baseline.back().ts == "all");
    CHECK(run.baseline.back().distribution.total_kg() == doctest::Approx(run.result.totals.total_kg()));
}

TEST_CASE("outputs are written and comparisons line up")
{
    const fs::path dir = fs::temp_directory_path() / "agrifoot_test_scenario";
    fs::remove_all(dir);
    const auto a = evaluate_scenario(load_scenario(testing::fixture("minimal/scenario.json")));
    const auto files = write_outputs(a, dir, TableFormat::tsv);
    for (const auto& f : files) CHECK(fs::exists(f));
    CHECK(files.front().extension() == ".tsv");

    const auto b = evaluate_scenario(load_scenario(testing::fixture("cattle/full_cc.json")));
    const auto cmp = compare_runs({a, b});
    CHECK(cmp.header().size() == 4);
    CHECK_THROWS_AS(compare_runs({a}), ConfigError);
    const auto crop = evaluate_scenario(load_scenario(testing::fixture("crop/mixed.json")));
    CHECK_THROWS_AS(compare_runs({a, crop}), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("validation reports coverage gaps with the offending size")
{
    const fs::path dir = fs::temp_directory_path() / "agrifoot_test_validate";
    fs::create_directories(dir);
    const fs::path cfg = dir / "gap.json";
    std::ofstream(cfg) << R"({"name": "gap", "size_unit": "heads",
        "distribution": {"inline": {"sizes": [10, 200], "counts": [1, 1]}},
        "catalog": ")" << testing::fixture("cattle/catalog.json").string()
                       << R"(", "profile": [{"ts": "TS_RFID", "a": 0, "b": 100}]})";
    const auto report = validate_scenario(cfg);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].find("200") != std::string::npos);
    CHECK(report.issues[0].find("TS_RFID") != std::string::npos);
    CHECK(validate_scenario(testing::fixture("cattle/high_pc.json")).ok());
    fs::remove_all(dir);
}
