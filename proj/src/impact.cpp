#include "agrifoot/impact.hpp"

#include <cmath>
#include <map>

#include "agrifoot/errors.hpp"

namespace agrifoot {

void validate(const GridIntensity& grid)
{
    if (!(grid.g_per_kwh > 0.0) || !std::isfinite(grid.g_per_kwh))
        throw ConfigError("grid intensity must be positive");
}

double embodied_annual(const DeviceSpec& device, double quantity)
{
    return quantity * device.embodied_ghg * device.allocation_fraction / device.lifetime_years;
}

double use_annual(double energy_wh_per_year, const GridIntensity& grid)
{
    return energy_wh_per_year / 1000.0 * grid.g_per_kwh / 1000.0;
}

Footprint operator*(const Footprint& f, double k)
{
    return {f.embodied_kg * k, f.use_kg * k, f.energy_kwh * k};
}

namespace {

// Footprint of one farm's worth of a device. The allocation fraction applies
// to both life-cycle stages: a shared device is only partly charged to the use-case.
Footprint farm_footprint(const DeviceSpec& spec, double quantity, double energy_wh, const GridIntensity& grid)
{
    const double energy = energy_wh * spec.allocation_fraction;
    return {embodied_annual(spec, quantity), use_annual(energy, grid), energy / 1000.0};
}

template <class Key>
std::vector<std::pair<Key, Footprint>> flatten(const std::map<Key, Footprint>& m)
{
    return {m.begin(), m.end()};
}

}  // namespace

AssessmentResult assess(const Inventory& inventory, const Catalog& catalog, const GridIntensity& grid)
{
    validate(grid);
    AssessmentResult out;
    out.unit = inventory.unit;
    out.records.reserve(inventory.records.size());

    std::map<std::string, Footprint> by_device, by_ts;
    std::map<double, Footprint> by_size;
    for (const auto& r : inventory.records) {
        const auto& ts = catalog.at(r.ts);
        const auto* dev = ts.find(r.device);
        if (!dev) throw EngineError("inventory references unknown device '" + r.device + "' in " + r.ts);
        const Footprint per_farm = farm_footprint(dev->spec, r.per_farm_quantity, r.annual_energy_per_farm, grid);
        const Footprint fp = per_farm * r.farms;
        out.records.push_back({r.farm_size, r.ts, r.device, dev->spec.group_label(), r.farms, fp});
        out.totals += fp;
        by_device[dev->spec.group_label()] += fp;
        by_ts[r.ts] += fp;
        by_size[r.farm_size] += fp;
    }
    out.by_device = flatten(by_device);
    out.by_ts = flatten(by_ts);
    out.by_size = flatten(by_size);
    return out;
}

Footprint assess_average_baseline(const Catalog& catalog, const std::string& ts,
                                  const FarmSizeDistribution& dist, const GridIntensity& grid)
{
    validate(grid);
    const auto& system = catalog.at(ts);
    const double avg = average_size(dist);
    const double farms = total_farms(dist);
    Footprint out;
    for (const auto& fd : instantiate_farm(system, avg))
        out += farm_footprint(system.devices[fd.device_index].spec, fd.quantity, fd.annual_energy_wh, grid) * farms;
    return out;
}

Footprint assess_average_baseline(const Catalog& catalog, const AllocationTable& allocation,
                                  const FarmSizeDistribution& dist, const GridIntensity& grid)
{
    const auto counts = dist.counts();
    const double farms = total_farms(dist);
    if (!(farms > 0.0)) throw EngineError("average size of an empty distribution");
    Footprint out;
    for (std::size_t j = 0; j < allocation.systems.size(); ++j) {
        double adopters = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i) adopters += counts[i] * allocation.at(i, j);
        if (!(adopters > 0.0)) continue;
        out += assess_average_baseline(catalog, allocation.systems[j], dist, grid) * (adopters / farms);
    }
    return out;
}

std::vector<EfficiencyPoint> efficiency_curve(const AssessmentResult& result, const FarmSizeDistribution& dist)
{
    if (result.unit != dist.size_unit())
        throw EngineError("efficiency curve: assessment is per " + std::string(to_string(result.unit)) +
                          " but distribution is per " + std::string(to_string(dist.size_unit())));
    std::map<double, Footprint> by_size(result.by_size.begin(), result.by_size.end());
    std::map<double, double> covered;  // sum of n_i * t_j(s_i) over systems present
    std::map<std::pair<double, std::string>, double> seen;
    for (const auto& r : result.records) {
        auto [it, inserted] = seen.emplace(std::make_pair(r.farm_size, r.ts), r.farms);
        if (inserted) covered[r.farm_size] += r.farms;
    }

    std::vector<EfficiencyPoint> out;
    const auto sizes = dist.sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double s = sizes[i];
        const auto c = covered.find(s);
        if (c == covered.end() || !(c->second > 0.0)) continue;
        const Footprint& fp = by_size[s];
        const double units = s * c->second;
        out.push_back({s, fp.total_kg() / units, fp.use_kg / units, fp.energy_kwh / units});
    }
    return out;
}

double thermal_baseline(double surface_ha, std::span<const FuelPass> passes, double kg_co2e_per_litre)
{
    if (!(surface_ha >= 0.0) || !(kg_co2e_per_litre >= 0.0))
        throw ConfigError("thermal baseline inputs must be non-negative");
    double litres_per_ha = 0.0;
    for (const auto& p : passes) {
        if (!(p.litres_per_ha >= 0.0) || !(p.passes >= 0.0))
            throw ConfigError("fuel table entry '" + p.operation + "' must be non-negative");
        litres_per_ha += p.passes * p.litres_per_ha;
    }
    return surface_ha * litres_per_ha * kg_co2e_per_litre;
}

namespace {

std::vector<std::string> footprint_columns(std::string key)
{
    return {std::move(key), "embodied_kgCO2e_per_year", "use_kgCO2e_per_year", "total_kgCO2e_per_year",
            "energy_kWh_per_year"};
}

}  // namespace

Table breakdown_table(const std::vector<std::pair<std::string, Footprint>>& rows, const std::string& key)
{
    Table t(footprint_columns(key));
    for (const auto& [k, fp] : rows) t.add_row({k, fp.embodied_kg, fp.use_kg, fp.total_kg(), fp.energy_kwh});
    return t;
}

Table size_breakdown_table(const AssessmentResult& result)
{
    Table t(footprint_columns("size_" + std::string(to_string(result.unit))));
    for (const auto& [s, fp] : result.by_size) t.add_row({s, fp.embodied_kg, fp.use_kg, fp.total_kg(), fp.energy_kwh});
    return t;
}

Table totals_table(const AssessmentResult& result)
{
    Table t({"metric", "value", "unit"});
    t.add_row({std::string("embodied"), result.totals.embodied_kg, std::string("kgCO2e_per_year")});
    t.add_row({std::string("use"), result.totals.use_kg, std::string("kgCO2e_per_year")});
    t.add_row({std::string("total"), result.totals.total_kg(), std::string("kgCO2e_per_year")});
    t.add_row({std::string("energy"), result.totals.energy_kwh, std::string("kWh_per_year")});
    return t;
}

Table efficiency_table(const std::vector<EfficiencyPoint>& curve, SizeUnit unit)
{
    const std::string per = unit == SizeUnit::heads ? "head" : "ha";
    Table t({"size_" + std::string(to_string(unit)), "total_kgCO2e_per_" + per + "_year",
             "use_kgCO2e_per_" + per + "_year", "energy_kWh_per_" + per + "_year"});
    for (const auto& p : curve) t.add_row({p.size, p.total_kg_per_unit, p.use_kg_per_unit, p.energy_kwh_per_unit});
    return t;
}

}  // namespace agrifoot
