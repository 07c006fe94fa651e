#include "agrifoot/scenario.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "agrifoot/errors.hpp"

namespace agrifoot {

namespace fs = std::filesystem;

double BaselineRow::relative_gap() const
{
    const double d = distribution.total_kg();
    return d != 0.0 ? (average.total_kg() - d) / d : 0.0;
}

AllocationTable scenario_allocation(const ScenarioConfig& config)
{
    if (config.full_deployment) return full_deployment_table(*config.full_deployment, config.distribution);
    return allocation_table(*config.profile, config.distribution);
}

ScenarioRun evaluate_scenario(const ScenarioConfig& config, const RunOptions& options)
{
    const auto& dist = config.distribution;
    if (!(total_farms(dist) > 0.0)) throw EngineError("distribution holds no farms");

    ScenarioRun run;
    run.name = config.name;
    run.unit = dist.size_unit();
    run.farms = total_farms(dist);
    run.size_total = total_size(dist);
    run.allocation = scenario_allocation(config);
    run.inventory = build_inventory(config.catalog, run.allocation, dist, options.threads);
    run.result = assess(run.inventory, config.catalog, config.grid);

    const auto counts = dist.counts();
    Footprint all_dist, all_avg;
    for (std::size_t j = 0; j < run.allocation.systems.size(); ++j) {
        const auto& ts = run.allocation.systems[j];
        double adopters = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i) adopters += counts[i] * run.allocation.at(i, j);
        BaselineRow row{ts, {}, {}};
        for (const auto& [name, fp] : run.result.by_ts)
            if (name == ts) row.distribution = fp;
        if (adopters > 0.0)
            row.average = assess_average_baseline(config.catalog, ts, dist, config.grid) * (adopters / run.farms);
        all_dist += row.distribution;
        all_avg += row.average;
        run.baseline.push_back(std::move(row));
    }
    if (run.baseline.size() > 1) run.baseline.push_back({"all", all_dist, all_avg});

    run.efficiency = efficiency_curve(run.result, dist);

    if (config.sensitivity) {
        auto spec = config.sensitivity->spec;
        spec.seed = options.seed.value_or(config.seed);
        if (config.sensitivity->mode == SensitivityMode::scenario) {
            run.sensitivity = run_sensitivity(config.catalog, run.allocation, dist, config.grid, spec, options.threads);
        } else {
            auto systems = config.sensitivity->systems;
            if (systems.empty())
                for (const auto& ts : config.catalog.systems) systems.push_back(ts.name);
            run.sensitivity =
                run_sensitivity_each_system(config.catalog, systems, dist, config.grid, spec, options.threads);
        }
    }

    if (config.thermal) {
        const auto& t = *config.thermal;
        ThermalComparison cmp;
        if (t.surface_ha) {
            cmp.surface_ha = *t.surface_ha;
        } else {
            if (dist.size_unit() != SizeUnit::hectares)
                throw ConfigError("thermal_baseline.surface_ha is required when farm sizes are in heads");
            cmp.surface_ha = run.size_total;
        }
        for (const auto& op : t.operations) cmp.litres_per_ha += op.passes * op.litres_per_ha;
        cmp.thermal_kg = thermal_baseline(cmp.surface_ha, t.operations, t.kg_co2e_per_litre);
        run.thermal = cmp;
    }
    return run;
}

Table allocation_export(const AllocationTable& allocation, SizeUnit unit)
{
    std::vector<std::string> header{"size_" + std::string(to_string(unit))};
    for (const auto& ts : allocation.systems) header.push_back(ts + "_share");
    Table t(std::move(header));
    for (std::size_t i = 0; i < allocation.sizes.size(); ++i) {
        std::vector<Table::Cell> row{allocation.sizes[i]};
        for (double v : allocation.shares[i]) row.emplace_back(v);
        t.add_row(std::move(row));
    }
    return t;
}

Table baseline_table(const std::vector<BaselineRow>& rows)
{
    Table t({"ts", "distribution_embodied_kgCO2e_per_year", "distribution_use_kgCO2e_per_year",
             "distribution_total_kgCO2e_per_year", "average_embodied_kgCO2e_per_year",
             "average_use_kgCO2e_per_year", "average_total_kgCO2e_per_year", "relative_gap_fraction"});
    for (const auto& r : rows)
        t.add_row({r.ts, r.distribution.embodied_kg, r.distribution.use_kg, r.distribution.total_kg(),
                   r.average.embodied_kg, r.average.use_kg, r.average.total_kg(), r.relative_gap()});
    return t;
}

namespace {

Table sensitivity_parameters_table(const SensitivityResult& s)
{
    const auto& spec = s.spec;
    const double sigma = lognormal_sigma(spec.relative_std);
    const bool median = spec.centre == LognormalCentre::median;
    Table t({"parameter", "value"});
    t.add_row({std::string("samples"), std::to_string(spec.samples)});
    t.add_row({std::string("seed"), std::to_string(spec.seed)});
    t.add_row({std::string("relative_std"), spec.relative_std});
    t.add_row({std::string("sigma_log"), sigma});
    t.add_row({std::string("centre"), std::string(median ? "median" : "mean")});
    t.add_row({std::string("factor_median"), median ? 1.0 : std::exp(-0.5 * sigma * sigma)});
    t.add_row({std::string("factor_mean"), median ? std::exp(0.5 * sigma * sigma) : 1.0});
    t.add_row({std::string("periodicity_jitter_days"), static_cast<double>(spec.periodicity_jitter_days)});
    t.add_row({std::string("vary_capacity"), std::string(spec.vary_capacity ? "true" : "false")});
    t.add_row({std::string("vary_lifetime_years"), std::string(spec.vary_lifetime ? "true" : "false")});
    t.add_row({std::string("vary_active_power"), std::string(spec.vary_active_power ? "true" : "false")});
    t.add_row({std::string("vary_solar_daily_supplement"), std::string(spec.vary_solar_supplement ? "true" : "false")});
    t.add_row({std::string("vary_travel_power"), std::string(spec.vary_travel_power ? "true" : "false")});
    t.add_row({std::string("failed_samples"), std::to_string(s.failures.size())});
    return t;
}

Table thermal_table(const ThermalComparison& t, const Footprint& digital)
{
    Table out({"metric", "value", "unit"});
    out.add_row({std::string("surface"), t.surface_ha, std::string("ha")});
    out.add_row({std::string("fuel"), t.litres_per_ha, std::string("litres_per_ha_year")});
    out.add_row({std::string("thermal_total"), t.thermal_kg, std::string("kgCO2e_per_year")});
    out.add_row({std::string("digital_total"), digital.total_kg(), std::string("kgCO2e_per_year")});
    out.add_row({std::string("digital_to_thermal_ratio"), t.thermal_kg > 0.0 ? digital.total_kg() / t.thermal_kg : 0.0,
                 std::string("fraction")});
    return out;
}

}  // namespace

std::vector<fs::path> write_outputs(const ScenarioRun& run, const fs::path& dir, TableFormat format)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw EngineError("cannot create output directory " + dir.string() + ": " + ec.message());
    const std::string ext = format == TableFormat::csv ? ".csv" : ".tsv";

    std::vector<fs::path> written;
    auto emit = [&](const std::string& stem, const Table& table) {
        const fs::path p = dir / (stem + ext);
        table.write_file(p.string(), format);
        written.push_back(p);
    };
    emit("inventory", inventory_table(run.inventory));
    emit("allocation", allocation_export(run.allocation, run.unit));
    emit("breakdown_device", breakdown_table(run.result.by_device, "device"));
    emit("breakdown_ts", breakdown_table(run.result.by_ts, "ts"));
    emit("breakdown_size", size_breakdown_table(run.result));
    emit("totals", totals_table(run.result));
    emit("efficiency", efficiency_table(run.efficiency, run.unit));
    emit("baseline", baseline_table(run.baseline));
    if (run.sensitivity) {
        emit("sensitivity_samples", samples_table(*run.sensitivity));
        emit("sensitivity_summary", summary_table(summarize(*run.sensitivity)));
        emit("sensitivity_parameters", sensitivity_parameters_table(*run.sensitivity));
    }
    if (run.thermal) emit("thermal", thermal_table(*run.thermal, run.result.totals));
    return written;
}

std::string summary_text(const ScenarioRun& run)
{
    std::ostringstream out;
    const std::string unit(to_string(run.unit));
    const auto& t = run.result.totals;
    out << "scenario   " << run.name << '\n';
    out << "farms      " << format_number(run.farms) << " (" << format_number(run.size_total) << ' ' << unit << ")\n";
    out << "systems   ";
    for (const auto& ts : run.allocation.systems) out << ' ' << ts;
    out << '\n';
    out << "energy     " << format_number(t.energy_kwh / 1000.0) << " MWh/year\n";
    out << "embodied   " << format_number(t.embodied_kg / 1000.0) << " t CO2e/year\n";
    out << "use        " << format_number(t.use_kg / 1000.0) << " t CO2e/year\n";
    out << "total      " << format_number(t.total_kg() / 1000.0) << " t CO2e/year\n";
    for (const auto& b : run.baseline)
        if (b.ts == "all" || run.baseline.size() == 1)
            out << "average    " << format_number(b.average.total_kg() / 1000.0)
                << " t CO2e/year (average-size extrapolation, gap " << format_number(100.0 * b.relative_gap())
                << "%)\n";
    if (run.thermal)
        out << "thermal    " << format_number(run.thermal->thermal_kg / 1000.0) << " t CO2e/year (NRD comparator)\n";
    if (run.sensitivity) {
        out << "monte carlo " << run.sensitivity->spec.samples << " samples, "
            << run.sensitivity->failures.size() << " failed\n";
    }
    for (const auto& w : run.inventory.warnings) out << "warning    " << w << '\n';
    return out.str();
}

Table compare_runs(const std::vector<ScenarioRun>& runs)
{
    if (runs.size() < 2) throw ConfigError("compare needs at least two scenarios");
    for (const auto& r : runs)
        if (r.unit != runs.front().unit)
            throw ConfigError("cannot compare scenario '" + r.name + "' (per " + std::string(to_string(r.unit)) +
                              ") with '" + runs.front().name + "' (per " +
                              std::string(to_string(runs.front().unit)) + ")");

    std::vector<std::string> header{"metric", "unit"};
    for (const auto& r : runs) header.push_back(r.name);
    Table t(std::move(header));

    auto add = [&](const std::string& metric, const std::string& unit, auto&& value_of) {
        std::vector<Table::Cell> row{metric, unit};
        for (const auto& r : runs) row.emplace_back(value_of(r));
        t.add_row(std::move(row));
    };
    add("embodied", "kgCO2e_per_year", [](const ScenarioRun& r) { return r.result.totals.embodied_kg; });
    add("use", "kgCO2e_per_year", [](const ScenarioRun& r) { return r.result.totals.use_kg; });
    add("total", "kgCO2e_per_year", [](const ScenarioRun& r) { return r.result.totals.total_kg(); });
    add("energy", "kWh_per_year", [](const ScenarioRun& r) { return r.result.totals.energy_kwh; });
    add("average_extrapolation_total", "kgCO2e_per_year", [](const ScenarioRun& r) {
        Footprint avg;
        for (const auto& b : r.baseline)
            if (b.ts != "all") avg += b.average;
        return avg.total_kg();
    });

    std::set<std::string> groups;
    for (const auto& r : runs)
        for (const auto& [g, fp] : r.result.by_device) groups.insert(g);
    for (const auto& g : groups) {
        auto group_value = [&g](const ScenarioRun& r, auto member) {
            for (const auto& [name, fp] : r.result.by_device)
                if (name == g) return member(fp);
            return 0.0;
        };
        add("device:" + g + ":embodied", "kgCO2e_per_year",
            [&](const ScenarioRun& r) { return group_value(r, [](const Footprint& f) { return f.embodied_kg; }); });
        add("device:" + g + ":use", "kgCO2e_per_year",
            [&](const ScenarioRun& r) { return group_value(r, [](const Footprint& f) { return f.use_kg; }); });
    }
    return t;
}

ValidationReport validate_scenario(const fs::path& path)
{
    ValidationReport report;
    std::optional<ScenarioConfig> config;
    try {
        config = load_scenario(path);
    } catch (const std::exception& e) {
        report.issues.push_back(e.what());
        return report;
    }

    if (!(total_farms(config->distribution) > 0.0)) report.issues.push_back("distribution holds no farms");

    if (config->profile) {
        const auto gaps = coverage_gaps(*config->profile, config->distribution.sizes());
        std::string supports;
        for (const auto& e : config->profile->entries) {
            if (!supports.empty()) supports += "; ";
            supports += e.ts + " [" + format_number(e.a) + ", " + format_number(e.b) + "] w=" + format_number(e.w);
        }
        for (double s : gaps)
            report.issues.push_back("no technological system covers size " + format_number(s) + " (supports: " +
                                    supports + ")");
    }
    return report;
}

}  // namespace agrifoot
