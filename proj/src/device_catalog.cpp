#include "agrifoot/device_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "agrifoot/errors.hpp"

namespace agrifoot {

std::string_view to_string(DeviceKind kind)
{
    switch (kind) {
    case DeviceKind::fixed_per_farm: return "fixed_per_farm";
    case DeviceKind::capacity_scaled: return "capacity_scaled";
    case DeviceKind::dependent: return "dependent";
    case DeviceKind::robotic: return "robotic";
    }
    return "?";
}

DeviceKind parse_device_kind(std::string_view text)
{
    for (auto k : {DeviceKind::fixed_per_farm, DeviceKind::capacity_scaled, DeviceKind::dependent,
                   DeviceKind::robotic})
        if (to_string(k) == text) return k;
    throw ConfigError("unknown device kind '" + std::string(text) + "'");
}

const SystemDevice* TechnologicalSystem::find(std::string_view device) const
{
    for (const auto& d : devices)
        if (d.spec.name == device) return &d;
    return nullptr;
}

const TechnologicalSystem* Catalog::find(std::string_view system) const
{
    for (const auto& s : systems)
        if (s.name == system) return &s;
    return nullptr;
}

const TechnologicalSystem& Catalog::at(std::string_view system) const
{
    if (const auto* s = find(system)) return *s;
    throw ConfigError("unknown technological system '" + std::string(system) + "'");
}

std::vector<Violation> validate_device(const DeviceSpec& d)
{
    std::vector<Violation> out;
    auto fail = [&](std::string msg) { out.push_back({{}, d.name, std::move(msg)}); };
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };

    if (d.name.empty()) fail("device name is empty");
    if (!finite_nonneg(d.active_power) || !finite_nonneg(d.sleep_power) || !finite_nonneg(d.travel_power))
        fail("powers must be non-negative");
    if (!finite_nonneg(d.active_hours_per_day) || !finite_nonneg(d.sleep_hours_per_day) ||
        !finite_nonneg(d.travel_hours_per_day))
        fail("hours per day must be non-negative");
    if (!(d.lifetime_years > 0.0) || !std::isfinite(d.lifetime_years)) fail("lifetime_years must be positive");
    if (!finite_nonneg(d.embodied_ghg)) fail("embodied_ghg must be non-negative");
    if (!finite_nonneg(d.solar_daily_supplement)) fail("solar_daily_supplement must be non-negative");
    if (!(d.allocation_fraction >= 0.0 && d.allocation_fraction <= 1.0))
        fail("allocation_fraction must lie in [0, 1]");

    switch (d.kind) {
    case DeviceKind::fixed_per_farm:
    case DeviceKind::capacity_scaled:
    case DeviceKind::dependent:
        if (d.active_hours_per_day + d.sleep_hours_per_day > 24.0 + 1e-9)
            fail("active_hours_per_day + sleep_hours_per_day exceeds 24");
        break;
    case DeviceKind::robotic:
        if (d.active_hours_per_day + d.travel_hours_per_day > 24.0 + 1e-9)
            fail("active_hours_per_day + travel_hours_per_day exceeds 24");
        if (!(d.active_hours_per_day > 0.0)) fail("robotic active_hours_per_day must be positive");
        if (!(d.use_periodicity_days >= 1.0)) fail("use_periodicity_days must be at least 1");
        if (!(d.passes_per_year >= 1.0)) fail("passes_per_year must be at least 1");
        break;
    }
    if ((d.kind == DeviceKind::capacity_scaled || d.kind == DeviceKind::robotic) && !(d.capacity > 0.0))
        fail("capacity must be positive");
    if (d.kind == DeviceKind::dependent) {
        if (!d.depends_on)
            fail("dependent device has no depends_on");
        else if (!(d.depends_on->ratio > 0.0))
            fail("depends_on ratio must be positive");
    } else if (d.depends_on) {
        fail("depends_on is only valid for dependent devices");
    }
    return out;
}

namespace {

// Returns an empty vector if the dependency graph is not a DAG over present devices.
std::vector<std::size_t> topo_order(const TechnologicalSystem& ts, std::string* problem)
{
    const std::size_t n = ts.devices.size();
    std::vector<int> state(n, 0);  // 0 new, 1 visiting, 2 done
    std::vector<std::size_t> order;
    order.reserve(n);

    auto index_of = [&](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < n; ++i)
            if (ts.devices[i].spec.name == name) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };

    for (std::size_t start = 0; start < n; ++start) {
        std::vector<std::size_t> chain;
        std::size_t cur = start;
        while (state[cur] == 0) {
            state[cur] = 1;
            chain.push_back(cur);
            const auto& dep = ts.devices[cur].spec.depends_on;
            if (!dep) break;
            const auto parent = index_of(dep->device);
            if (parent < 0) {
                if (problem) *problem = "depends on '" + dep->device + "' which is not in the system";
                return {};
            }
            cur = static_cast<std::size_t>(parent);
            if (state[cur] == 1) {
                if (problem) *problem = "dependency cycle through '" + ts.devices[cur].spec.name + "'";
                return {};
            }
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            state[*it] = 2;
            order.push_back(*it);
        }
    }
    return order;
}

}  // namespace

std::vector<Violation> validate_catalog(std::span<const TechnologicalSystem> systems)
{
    std::vector<Violation> out;
    std::set<std::string> system_names;
    for (const auto& ts : systems) {
        if (ts.name.empty()) out.push_back({ts.name, {}, "system name is empty"});
        if (!system_names.insert(ts.name).second) out.push_back({ts.name, {}, "duplicate system name"});

        std::set<std::string> device_names;
        for (const auto& d : ts.devices) {
            if (!device_names.insert(d.spec.name).second)
                out.push_back({ts.name, d.spec.name, "duplicate device name within system"});
            for (auto v : validate_device(d.spec)) {
                v.system = ts.name;
                out.push_back(std::move(v));
            }
            if (!(d.base_quantity >= 0.0)) out.push_back({ts.name, d.spec.name, "base_quantity must be non-negative"});
            if (d.spec.depends_on && !ts.find(d.spec.depends_on->device))
                out.push_back({ts.name, d.spec.name,
                               "depends on '" + d.spec.depends_on->device + "' which is not in the system"});
        }
        std::string problem;
        if (topo_order(ts, &problem).empty() && !ts.devices.empty() &&
            problem.find("cycle") != std::string::npos)
            out.push_back({ts.name, {}, problem});
    }
    return out;
}

std::vector<std::size_t> evaluation_order(const TechnologicalSystem& system)
{
    std::string problem;
    auto order = topo_order(system, &problem);
    if (order.size() != system.devices.size())
        throw ConfigError("system '" + system.name + "': " + problem);
    return order;
}

}  // namespace agrifoot
