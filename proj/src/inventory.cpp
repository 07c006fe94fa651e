#include "agrifoot/inventory.hpp"

#include <algorithm>
#include <cmath>

#include "agrifoot/errors.hpp"
#include "parallel.hpp"

namespace agrifoot {

double boundary_ceil(double x)
{
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-12 * std::max(1.0, std::abs(x))) return nearest;
    return std::ceil(x);
}

double robot_quantity(const DeviceSpec& robot, double size)
{
    const double per_robot = robot.use_periodicity_days * robot.capacity * robot.active_hours_per_day;
    if (!(per_robot > 0.0))
        throw EngineError("robot '" + robot.name + "' has no treatment capacity per pass");
    return boundary_ceil(size / per_robot);
}

double device_quantity(const DeviceSpec& device, double size, double base_quantity,
                       std::optional<double> parent_quantity)
{
    switch (device.kind) {
    case DeviceKind::fixed_per_farm:
        return base_quantity;
    case DeviceKind::capacity_scaled:
        if (!(device.capacity > 0.0))
            throw EngineError("device '" + device.name + "' has non-positive capacity");
        return boundary_ceil(size / device.capacity);
    case DeviceKind::dependent:
        if (!device.depends_on || !parent_quantity)
            throw EngineError("dependent device '" + device.name + "' evaluated without its parent quantity");
        return boundary_ceil(device.depends_on->ratio * *parent_quantity);
    case DeviceKind::robotic:
        return robot_quantity(device, size);
    }
    return 0.0;
}

double robot_total_work_time(const DeviceSpec& robot, double size, double robots)
{
    return size / (robots * robot.capacity);
}

double robot_work_days(const DeviceSpec& robot, double size, double robots)
{
    if (!(robot.active_hours_per_day > 0.0))
        throw EngineError("robot '" + robot.name + "' has zero active hours per day");
    return boundary_ceil(robot_total_work_time(robot, size, robots) / robot.active_hours_per_day);
}

double annual_energy_nonrobotic(const DeviceSpec& device, double quantity)
{
    return quantity * kDaysPerYear *
           (device.active_hours_per_day * device.active_power + device.sleep_hours_per_day * device.sleep_power);
}

double annual_energy_robotic(const DeviceSpec& robot, double size)
{
    if (!(robot.active_hours_per_day > 0.0))
        throw EngineError("robot '" + robot.name + "' has zero active hours per day");
    const double robots = robot_quantity(robot, size);
    if (robots <= 0.0) return 0.0;
    const double work_hours = robot_total_work_time(robot, size, robots);
    const double days = robot_work_days(robot, size, robots);
    const double travel = robot.travel_power * robot.travel_hours_per_day - robot.solar_daily_supplement;
    const double energy =
        robot.passes_per_year * robots * (robot.active_power * work_hours + travel * days);
    return std::max(0.0, energy);
}

double derive_capacity(double width_m, double speed_kmh, double field_efficiency)
{
    if (!(width_m > 0.0) || !(speed_kmh > 0.0) || !(field_efficiency > 0.0 && field_efficiency <= 1.0))
        throw ConfigError("derive_capacity needs positive width and speed and field_efficiency in (0, 1]");
    // m * km/h = 1000 m^2/h = 0.1 ha/h
    return width_m * speed_kmh * field_efficiency / 10.0;
}

std::vector<FarmDevice> instantiate_farm(const TechnologicalSystem& system, double size)
{
    const auto order = evaluation_order(system);
    std::vector<FarmDevice> out(system.devices.size());
    for (std::size_t idx : order) {
        const auto& entry = system.devices[idx];
        const auto& spec = entry.spec;
        auto& fd = out[idx];
        fd.device_index = idx;

        std::optional<double> parent;
        if (spec.kind == DeviceKind::dependent && spec.depends_on) {
            for (std::size_t j = 0; j < system.devices.size(); ++j)
                if (system.devices[j].spec.name == spec.depends_on->device) parent = out[j].quantity;
        }
        fd.quantity = device_quantity(spec, size, entry.base_quantity, parent);

        if (spec.kind == DeviceKind::robotic) {
            fd.annual_energy_wh = annual_energy_robotic(spec, size);
            if (fd.quantity > 0.0) {
                const double days = robot_work_days(spec, size, fd.quantity);
                if (days > spec.use_periodicity_days)
                    fd.warning = "robot '" + spec.name + "' needs " + format_number(days) + " days per pass at size " +
                                 format_number(size) + ", exceeding the " +
                                 format_number(spec.use_periodicity_days) + "-day window";
            }
        } else {
            fd.annual_energy_wh = annual_energy_nonrobotic(spec, fd.quantity);
        }
    }
    return out;
}

Inventory build_inventory(const Catalog& catalog, const AllocationTable& allocation,
                          const FarmSizeDistribution& dist, unsigned threads)
{
    const auto sizes = dist.sizes();
    const auto counts = dist.counts();
    if (allocation.sizes.size() != sizes.size())
        throw EngineError("allocation table does not match the distribution");

    std::vector<const TechnologicalSystem*> systems;
    for (const auto& name : allocation.systems) {
        const auto* ts = catalog.find(name);
        if (!ts) throw ConfigError("allocation references unknown technological system '" + name + "'");
        systems.push_back(ts);
    }

    struct Cell {
        std::vector<InventoryRecord> records;
        std::vector<std::string> warnings;
    };
    std::vector<Cell> cells(sizes.size());

    detail::parallel_for(sizes.size(), threads, [&](std::size_t i) {
        auto& cell = cells[i];
        for (std::size_t j = 0; j < systems.size(); ++j) {
            const double share = allocation.at(i, j);
            if (!(share > 0.0)) continue;
            const auto& ts = *systems[j];
            std::vector<FarmDevice> farm;
            try {
                farm = instantiate_farm(ts, sizes[i]);
            } catch (const std::exception& e) {
                throw EngineError("size " + format_number(sizes[i]) + ", system " + ts.name + ": " + e.what());
            }
            const double farms = counts[i] * share;
            for (const auto& fd : farm) {
                const auto& spec = ts.devices[fd.device_index].spec;
                cell.records.push_back({sizes[i], ts.name, spec.name, farms, fd.quantity, fd.quantity * farms,
                                        fd.annual_energy_wh});
                if (fd.warning) cell.warnings.push_back(ts.name + ": " + *fd.warning);
            }
        }
    });

    Inventory inv;
    inv.unit = dist.size_unit();
    for (auto& c : cells) {
        std::move(c.records.begin(), c.records.end(), std::back_inserter(inv.records));
        std::move(c.warnings.begin(), c.warnings.end(), std::back_inserter(inv.warnings));
    }
    return inv;
}

Table inventory_table(const Inventory& inventory)
{
    // annual_energy_Wh is per farm; territory_annual_energy_Wh multiplies by the farm count.
    Table t({"size_" + std::string(to_string(inventory.unit)), "ts", "device", "per_farm_quantity",
             "scaled_quantity", "annual_energy_Wh", "farms", "territory_annual_energy_Wh"});
    for (const auto& r : inventory.records)
        t.add_row({r.farm_size, r.ts, r.device, r.per_farm_quantity, r.scaled_quantity, r.annual_energy_per_farm,
                   r.farms, r.annual_energy_wh()});
    return t;
}

}  // namespace agrifoot
