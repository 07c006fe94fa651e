#include <algorithm>

#include "doctest.h"

#include "agrifoot/config.hpp"
#include "agrifoot/errors.hpp"
#include "support.hpp"

using namespace agrifoot;
using testing::fixed;
using testing::scaled;

TEST_CASE("device validation flags impossible parameters")
{
    auto d = fixed("laptop", 30, 8, 250, 5);
    CHECK(validate_device(d).empty());
    d.sleep_hours_per_day = 20;
    CHECK_FALSE(validate_device(d).empty());
    d = fixed("laptop", 30, 8, 250, 0);
    CHECK_FALSE(validate_device(d).empty());
    d = scaled("reader", 0, 2, 12, 15, 8);
    CHECK_FALSE(validate_device(d).empty());
    d = fixed("x", -1, 8, 1, 1);
    CHECK_FALSE(validate_device(d).empty());
}

TEST_CASE("catalog validation finds duplicates, dangling parents and cycles")
{
    auto cam = scaled("camera", 40, 6, 24, 30, 6);
    auto gpu = fixed("gpu", 300, 24, 400, 5);
    gpu.kind = DeviceKind::dependent;
    gpu.depends_on = Dependency{"camera", 0.1};
    auto ts = testing::system("TS", {cam, gpu});
    std::vector<TechnologicalSystem> systems{ts};
    CHECK(validate_catalog(systems).empty());

    auto order = evaluation_order(ts);
    CHECK(std::find(order.begin(), order.end(), 0) < std::find(order.begin(), order.end(), 1));

    systems[0].devices[1].spec.depends_on = Dependency{"missing", 1};
    CHECK_FALSE(validate_catalog(systems).empty());

    auto a = fixed("a", 1, 1, 1, 1), b = fixed("b", 1, 1, 1, 1);
    a.kind = b.kind = DeviceKind::dependent;
    a.depends_on = Dependency{"b", 1};
    b.depends_on = Dependency{"a", 1};
    systems = {testing::system("cyclic", {a, b})};
    CHECK_FALSE(validate_catalog(systems).empty());

    systems = {testing::system("dup", {cam, cam})};
    CHECK_FALSE(validate_catalog(systems).empty());
    systems = {testing::system("X", {cam}), testing::system("X", {cam})};
    CHECK_FALSE(validate_catalog(systems).empty());
}

TEST_CASE("catalog lookup")
{
    Catalog c{{testing::system("TS_A", {fixed("laptop", 30, 8, 250, 5)})}};
    CHECK(c.find("TS_A") != nullptr);
    CHECK(c.find("TS_B") == nullptr);
    CHECK_THROWS_AS(c.at("TS_B"), ConfigError);
    CHECK(c.at("TS_A").find("laptop") != nullptr);
}

TEST_CASE("catalog JSON round trip")
{
    const auto catalog = load_catalog_file(testing::fixture("cattle/catalog.json"));
    CHECK(catalog.systems.size() == 4);
    const auto again = parse_catalog(catalog_to_json(catalog));
    CHECK(again == catalog);

    const auto crop = load_catalog_file(testing::fixture("crop/catalog.json"));
    CHECK(parse_catalog(catalog_to_json(crop)) == crop);
    CHECK(crop.at("TS_AR").find("AR")->spec.capacity == doctest::Approx(0.3));
}

TEST_CASE("catalog JSON errors carry a path")
{
    auto doc = json::parse(R"({"devices": [{"name": "x", "kind": "fixed_per_farm", "lifetime_years": 1,
        "embodied_ghg": 1, "colour": "red"}], "systems": []})");
    try {
        parse_catalog(doc);
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("devices[0]") != std::string::npos);
        CHECK(std::string(e.what()).find("colour") != std::string::npos);
    }
}
