#include <cmath>

#include "doctest.h"

#include "agrifoot/errors.hpp"
#include "agrifoot/impact.hpp"
#include "support.hpp"

using namespace agrifoot;
using testing::fixed;
using testing::scaled;

TEST_CASE("embodied emissions are amortized and allocated")
{
    auto laptop = fixed("laptop", 30, 8, 250, 5);
    CHECK(embodied_annual(laptop, 2) == 100.0);
    laptop.allocation_fraction = 0.5;
    CHECK(embodied_annual(laptop, 2) == 50.0);
}

TEST_CASE("use-phase conversion")
{
    GridIntensity fr;
    CHECK(use_annual(1e6, fr) == 68.0);
    CHECK(use_annual(0, fr) == 0.0);
    CHECK(use_annual(2e6, GridIntensity{"x", 34}) == 68.0);
    CHECK_THROWS_AS(validate(GridIntensity{"x", 0}), ConfigError);
}

TEST_CASE("assessment sums records and groups by label")
{
    auto a = fixed("laptop", 30, 8, 250, 5);
    auto b = fixed("laptop_24h", 30, 24, 250, 5);
    a.group = b.group = "Laptop";
    Catalog c{{testing::system("A", {a}), testing::system("B", {b})}};
    FarmSizeDistribution d({10, 20}, {3, 1}, SizeUnit::heads);
    AllocationTable t{{10, 20}, {"A", "B"}, {{1, 0}, {0, 1}}};
    const auto res = assess(build_inventory(c, t, d), c, GridIntensity{});
    REQUIRE(res.by_device.size() == 1);
    CHECK(res.by_device[0].first == "Laptop");
    CHECK(res.totals.embodied_kg == doctest::Approx(4 * 50.0));
    const double kwh = (3 * 365 * 240.0 + 365 * 720.0) / 1000;
    CHECK(res.totals.energy_kwh == doctest::Approx(kwh));
    CHECK(res.totals.use_kg == doctest::Approx(kwh * 0.068));
    CHECK(res.by_ts.size() == 2);
    CHECK(res.by_size.size() == 2);
}

TEST_CASE("average baseline diverges across a capacity ceiling")
{
    Catalog c{{testing::system("A", {scaled("cam", 50, 6, 24, 30, 6)})}};
    FarmSizeDistribution d({30, 70}, {1, 1}, SizeUnit::heads);
    const auto res = assess(build_inventory(c, full_deployment_table("A", d), d), c, GridIntensity{});
    const auto avg = assess_average_baseline(c, "A", d, GridIntensity{});
    // 1 + 2 cameras across the two farms against 2 x 1 at the mean size of 50.
    CHECK(res.totals.embodied_kg == doctest::Approx(3 * 5.0));
    CHECK(avg.embodied_kg == doctest::Approx(2 * 5.0));
}

TEST_CASE("efficiency curve reports per-unit emissions")
{
    Catalog c{{testing::system("A", {fixed("laptop", 30, 8, 250, 5)})}};
    FarmSizeDistribution d({10, 20, 40}, {2, 0, 1}, SizeUnit::heads);
    const auto res = assess(build_inventory(c, full_deployment_table("A", d), d), c, GridIntensity{});
    const auto curve = efficiency_curve(res, d);
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].total_kg_per_unit > curve[1].total_kg_per_unit);
    CHECK(curve[0].total_kg_per_unit == doctest::Approx(4 * curve[1].total_kg_per_unit));
    FarmSizeDistribution ha({10, 20, 40}, {2, 0, 1}, SizeUnit::hectares);
    CHECK_THROWS_AS(efficiency_curve(res, ha), EngineError);
}

TEST_CASE("thermal baseline")
{
    std::vector<FuelPass> ops{{"seeding", 6.5, 2}, {"weeding", 3.78, 7}};
    CHECK(thermal_baseline(1, ops, 3.17) == doctest::Approx((13 + 26.46) * 3.17));
    CHECK(thermal_baseline(0, ops, 3.17) == 0.0);
    std::vector<FuelPass> bad{{"x", -1, 1}};
    CHECK_THROWS_AS(thermal_baseline(1, bad, 3.17), ConfigError);
}

TEST_CASE("report tables have one row per key")
{
    std::vector<std::pair<std::string, Footprint>> rows{{"a", {1, 2, 3}}, {"b", {4, 5, 6}}};
    CHECK(breakdown_table(rows, "device").rows().size() == 2);
    CHECK(breakdown_table(rows, "device").header().front() == "device");
}
