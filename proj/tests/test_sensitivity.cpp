#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "agrifoot/errors.hpp"
#include "agrifoot/sensitivity.hpp"
#include "support.hpp"

using namespace agrifoot;
using testing::fixed;
using testing::robot;
using testing::scaled;

namespace {

Catalog linear_catalog()
{
    return Catalog{{testing::system("A", {fixed("laptop", 30, 8, 250, 5)})}};
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> x, std::vector<double> y)
{
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] <= y[j]) ++i;
        else ++j;
        d = std::max(d, std::abs(double(i) / x.size() - double(j) / y.size()));
    }
    return d;
}

}  // namespace

TEST_CASE("spec validation")
{
    PerturbationSpec s;
    CHECK_NOTHROW(validate(s));
    s.relative_std = 0;
    CHECK_THROWS_AS(validate(s), ConfigError);
    s = {};
    s.samples = 0;
    CHECK_THROWS_AS(validate(s), ConfigError);
    s = {};
    s.max_failure_fraction = 1;
    CHECK_THROWS_AS(validate(s), ConfigError);
}

TEST_CASE("lognormal sigma reproduces the relative spread")
{
    const double sigma = lognormal_sigma(0.2);
    CHECK(std::sqrt(std::exp(sigma * sigma) - 1) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("perturbation touches only the selected parameters")
{
    auto r = robot("R", 0.5, 10, 10, 9, 2000);
    r.travel_power = 100;
    Catalog c{{testing::system("T", {r})}};
    PerturbationSpec s;
    s.periodicity_jitter_days = 0;
    s.vary_capacity = false;
    const auto p = perturb_catalog(c, s, 4);
    const auto& q = p.systems[0].devices[0].spec;
    CHECK(q.capacity == r.capacity);
    CHECK(q.travel_power == r.travel_power);
    CHECK(q.use_periodicity_days == r.use_periodicity_days);
    CHECK(q.active_power != r.active_power);
    CHECK(q.lifetime_years != r.lifetime_years);
    CHECK(q.passes_per_year == r.passes_per_year);
}

TEST_CASE("periodicity jitter stays in range and above one day")
{
    Catalog c{{testing::system("T", {robot("R", 0.5, 1, 10, 9, 2000)})}};
    PerturbationSpec s;
    s.periodicity_jitter_days = 2;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const double u = perturb_catalog(c, s, i).systems[0].devices[0].spec.use_periodicity_days;
        CHECK(u >= 1.0);
        CHECK(u <= 3.0);
        CHECK(u == std::round(u));
    }
}

TEST_CASE("median centring keeps the sample median near the nominal value")
{
    const auto c = linear_catalog();
    FarmSizeDistribution d({10}, {100}, SizeUnit::heads);
    PerturbationSpec s;
    s.samples = 4000;
    s.seed = 99;
    const auto res = run_sensitivity(c, full_deployment_table("A", d), d, GridIntensity{}, s);
    auto use = res.series[0].use_kg;
    std::sort(use.begin(), use.end());
    const double nominal = 100 * 365 * 240.0 / 1000 * 0.068;
    CHECK(quantile_sorted(use, 0.5) == doctest::Approx(nominal).epsilon(0.02));

    s.centre = LognormalCentre::mean;
    const auto mean_res = run_sensitivity(c, full_deployment_table("A", d), d, GridIntensity{}, s);
    double mean = 0;
    for (double v : mean_res.series[0].use_kg) mean += v;
    CHECK(mean / s.samples == doctest::Approx(nominal).epsilon(0.02));
}

TEST_CASE("seeds: identical seeds repeat, different seeds agree in distribution")
{
    const auto c = linear_catalog();
    FarmSizeDistribution d({10}, {100}, SizeUnit::heads);
    PerturbationSpec s;
    s.samples = 2000;
    s.seed = 1;
    const auto t = full_deployment_table("A", d);
    const auto a = run_sensitivity(c, t, d, GridIntensity{}, s, 1);
    const auto b = run_sensitivity(c, t, d, GridIntensity{}, s, 4);
    CHECK(a.series[0].total_kg == b.series[0].total_kg);
    s.seed = 2;
    const auto other = run_sensitivity(c, t, d, GridIntensity{}, s, 3);
    CHECK(other.series[0].total_kg != a.series[0].total_kg);
    // 1% critical value for n = m = 2000 is about 1.63 * sqrt(2 / 2000).
    CHECK(ks_statistic(a.series[0].total_kg, other.series[0].total_kg) < 1.63 * std::sqrt(2.0 / 2000));
}

TEST_CASE("quantiles interpolate linearly")
{
    std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(quantile_sorted(v, 0) == 1);
    CHECK(quantile_sorted(v, 1) == 5);
    CHECK(quantile_sorted(v, 0.5) == 3);
    CHECK(quantile_sorted(v, 0.125) == 1.5);
    CHECK_THROWS_AS(quantile_sorted({}, 0.5), EngineError);
}

TEST_CASE("summary rows cover every label and metric")
{
    Catalog c{{testing::system("A", {fixed("laptop", 30, 8, 250, 5)}),
               testing::system("B", {scaled("cam", 40, 6, 24, 30, 6)})}};
    FarmSizeDistribution d({10, 80}, {5, 5}, SizeUnit::heads);
    AllocationTable t{{10, 80}, {"A", "B"}, {{1, 0}, {0, 1}}};
    PerturbationSpec s;
    s.samples = 50;
    const auto res = run_sensitivity(c, t, d, GridIntensity{}, s);
    CHECK(res.labels == std::vector<std::string>{"A", "B", "all"});
    const auto rows = summarize(res);
    CHECK(rows.size() == 3 * 4);
    for (const auto& r : rows) {
        CHECK(r.count == 50);
        CHECK(r.p5 <= r.p50);
        CHECK(r.p50 <= r.p95);
    }
    CHECK(samples_table(res).rows().size() == 50 * 3 * 4);

    const auto each = run_sensitivity_each_system(c, {"A", "B"}, d, GridIntensity{}, s);
    CHECK(each.labels == std::vector<std::string>{"A", "B"});
}
