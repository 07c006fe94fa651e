#include "agrifoot/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "agrifoot/errors.hpp"
#include "agrifoot/inventory.hpp"
#include "parallel.hpp"

namespace agrifoot {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

void validate(const PerturbationSpec& spec)
{
    if (!(spec.relative_std > 0.0)) throw ConfigError("sensitivity relative_std must be positive");
    if (spec.samples < 1) throw ConfigError("sensitivity samples must be at least 1");
    if (spec.periodicity_jitter_days < 0) throw ConfigError("periodicity_jitter_days must be non-negative");
    if (!(spec.max_failure_fraction >= 0.0 && spec.max_failure_fraction < 1.0))
        throw ConfigError("max_failure_fraction must lie in [0, 1)");
}

double lognormal_sigma(double relative_std)
{
    return std::sqrt(std::log1p(relative_std * relative_std));
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(seed + (index + 1) * kGoldenGamma);
}

SplitMix64::result_type SplitMix64::operator()()
{
    state_ += kGoldenGamma;
    return mix64(state_);
}

double SplitMix64::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double SplitMix64::standard_normal()
{
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Catalog perturb_catalog(const Catalog& catalog, const PerturbationSpec& spec, std::uint64_t sample_index)
{
    struct Factors {
        double capacity = 1.0, lifetime = 1.0, active_power = 1.0, solar = 1.0, travel_power = 1.0;
        int periodicity_shift = 0;
    };

    std::map<std::string, Factors> factors;
    for (const auto& ts : catalog.systems)
        for (const auto& d : ts.devices) factors.emplace(d.spec.name, Factors{});

    const double sigma = lognormal_sigma(spec.relative_std);
    const double shift = spec.centre == LognormalCentre::mean ? -0.5 * sigma * sigma : 0.0;
    SplitMix64 rng(sample_seed(spec.seed, sample_index));
    auto draw = [&](bool enabled) {
        const double z = rng.standard_normal();
        return enabled ? std::exp(sigma * z + shift) : 1.0;
    };
    const int jitter = spec.periodicity_jitter_days;
    for (auto& [name, f] : factors) {
        f.capacity = draw(spec.vary_capacity);
        f.lifetime = draw(spec.vary_lifetime);
        f.active_power = draw(spec.vary_active_power);
        f.solar = draw(spec.vary_solar_supplement);
        f.travel_power = draw(spec.vary_travel_power);
        const double u = rng.uniform();
        f.periodicity_shift = static_cast<int>(std::floor(u * (2 * jitter + 1))) - jitter;
    }

    Catalog out = catalog;
    for (auto& ts : out.systems) {
        for (auto& d : ts.devices) {
            const auto& f = factors.at(d.spec.name);
            auto& s = d.spec;
            s.capacity *= f.capacity;
            s.lifetime_years *= f.lifetime;
            s.active_power *= f.active_power;
            s.solar_daily_supplement *= f.solar;
            s.travel_power *= f.travel_power;
            if (s.kind == DeviceKind::robotic)
                s.use_periodicity_days = std::max(1.0, s.use_periodicity_days + f.periodicity_shift);
        }
    }
    return out;
}

namespace {

using Evaluator = std::function<std::vector<Footprint>(const Catalog&)>;

SensitivityResult run_samples(const Catalog& catalog, std::vector<std::string> labels, const Evaluator& evaluate,
                              const PerturbationSpec& spec, unsigned threads)
{
    validate(spec);
    const std::size_t n = spec.samples;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    SensitivityResult result;
    result.spec = spec;
    result.labels = std::move(labels);
    result.series.resize(result.labels.size());
    for (auto& s : result.series) {
        s.energy_kwh.assign(n, nan);
        s.embodied_kg.assign(n, nan);
        s.use_kg.assign(n, nan);
        s.total_kg.assign(n, nan);
    }
    std::vector<std::string> errors(n);

    detail::parallel_for(n, threads, [&](std::size_t i) {
        try {
            const auto values = evaluate(perturb_catalog(catalog, spec, i));
            for (const auto& v : values)
                if (!std::isfinite(v.total_kg()) || !std::isfinite(v.energy_kwh))
                    throw EngineError("non-finite footprint");
            for (std::size_t k = 0; k < values.size(); ++k) {
                auto& s = result.series[k];
                s.energy_kwh[i] = values[k].energy_kwh;
                s.embodied_kg[i] = values[k].embodied_kg;
                s.use_kg[i] = values[k].use_kg;
                s.total_kg[i] = values[k].total_kg();
            }
        } catch (const std::exception& e) {
            errors[i] = e.what();
            if (errors[i].empty()) errors[i] = "unknown error";
        }
    });

    for (std::size_t i = 0; i < n; ++i)
        if (!errors[i].empty()) result.failures.push_back({i, errors[i]});
    const double fraction = static_cast<double>(result.failures.size()) / static_cast<double>(n);
    if (fraction > spec.max_failure_fraction)
        throw SensitivityAbort(std::to_string(result.failures.size()) + " of " + std::to_string(n) +
                               " Monte Carlo samples failed; first failure (sample " +
                               std::to_string(result.failures.front().index) + "): " +
                               result.failures.front().message);
    return result;
}

}  // namespace

SensitivityResult run_sensitivity(const Catalog& catalog, const AllocationTable& allocation,
                                  const FarmSizeDistribution& dist, const GridIntensity& grid,
                                  const PerturbationSpec& spec, unsigned threads)
{
    std::vector<std::string> labels = allocation.systems;
    const bool with_all = labels.size() > 1;
    if (with_all) labels.push_back("all");

    Evaluator evaluate = [&](const Catalog& perturbed) {
        const auto result = assess(build_inventory(perturbed, allocation, dist), perturbed, grid);
        std::vector<Footprint> out;
        for (const auto& name : allocation.systems) {
            Footprint fp;
            for (const auto& [ts, v] : result.by_ts)
                if (ts == name) fp = v;
            out.push_back(fp);
        }
        if (with_all) out.push_back(result.totals);
        return out;
    };
    return run_samples(catalog, std::move(labels), evaluate, spec, threads);
}

SensitivityResult run_sensitivity_each_system(const Catalog& catalog, const std::vector<std::string>& systems,
                                              const FarmSizeDistribution& dist, const GridIntensity& grid,
                                              const PerturbationSpec& spec, unsigned threads)
{
    std::vector<AllocationTable> tables;
    for (const auto& name : systems) {
        catalog.at(name);
        tables.push_back(full_deployment_table(name, dist));
    }
    Evaluator evaluate = [&](const Catalog& perturbed) {
        std::vector<Footprint> out;
        for (const auto& table : tables)
            out.push_back(assess(build_inventory(perturbed, table, dist), perturbed, grid).totals);
        return out;
    };
    return run_samples(catalog, systems, evaluate, spec, threads);
}

double quantile_sorted(const std::vector<double>& sorted, double q)
{
    if (sorted.empty()) throw EngineError("quantile of an empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<SummaryRow> summarize(const SensitivityResult& result)
{
    std::vector<SummaryRow> rows;
    for (std::size_t k = 0; k < result.labels.size(); ++k) {
        const auto& s = result.series[k];
        const std::pair<const char*, const std::vector<double>*> metrics[] = {
            {"energy_kWh_per_year", &s.energy_kwh},
            {"embodied_kgCO2e_per_year", &s.embodied_kg},
            {"use_kgCO2e_per_year", &s.use_kg},
            {"total_kgCO2e_per_year", &s.total_kg},
        };
        for (const auto& [metric, values] : metrics) {
            std::vector<double> v;
            for (double x : *values)
                if (!std::isnan(x)) v.push_back(x);
            if (v.empty()) throw EngineError("no successful samples for " + result.labels[k]);
            std::sort(v.begin(), v.end());

            SummaryRow row;
            row.label = result.labels[k];
            row.metric = metric;
            row.count = v.size();
            double sum = 0.0;
            for (double x : v) sum += x;
            row.mean = sum / static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - row.mean) * (x - row.mean);
            const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
            row.relative_std = row.mean != 0.0 ? sd / std::abs(row.mean) : 0.0;
            row.p5 = quantile_sorted(v, 0.05);
            row.p25 = quantile_sorted(v, 0.25);
            row.p50 = quantile_sorted(v, 0.50);
            row.p75 = quantile_sorted(v, 0.75);
            row.p95 = quantile_sorted(v, 0.95);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

Table samples_table(const SensitivityResult& result)
{
    Table t({"sample_index", "ts", "metric", "value"});
    const std::size_t n = result.spec.samples;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < result.labels.size(); ++k) {
            const auto& s = result.series[k];
            const std::string idx = std::to_string(i);
            t.add_row({idx, result.labels[k], std::string("energy_kWh_per_year"), s.energy_kwh[i]});
            t.add_row({idx, result.labels[k], std::string("embodied_kgCO2e_per_year"), s.embodied_kg[i]});
            t.add_row({idx, result.labels[k], std::string("use_kgCO2e_per_year"), s.use_kg[i]});
            t.add_row({idx, result.labels[k], std::string("total_kgCO2e_per_year"), s.total_kg[i]});
        }
    }
    return t;
}

Table summary_table(const std::vector<SummaryRow>& rows)
{
    Table t({"ts", "metric", "samples", "mean", "relative_std", "p5", "p25", "p50", "p75", "p95"});
    for (const auto& r : rows)
        t.add_row({r.label, r.metric, std::to_string(r.count), r.mean, r.relative_std, r.p5, r.p25, r.p50,
                   r.p75, r.p95});
    return t;
}

}  // namespace agrifoot
