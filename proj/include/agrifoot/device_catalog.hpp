#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agrifoot {

enum class DeviceKind {
    fixed_per_farm,   ///< a set number of units per farm (laptops, PCs)
    capacity_scaled,  ///< ceil(size / capacity) units per farm
    dependent,        ///< ceil(ratio * quantity of another device)
    robotic,          ///< fleet sized from hourly treatment capacity and seasonal window
};

std::string_view to_string(DeviceKind kind);
DeviceKind parse_device_kind(std::string_view text);

struct Dependency {
    std::string device;
    double ratio = 1.0;

    bool operator==(const Dependency&) const = default;
};

/// One device type. Powers in W, times in h/day, embodied footprint in kg CO2e per unit.
///
/// Robotic devices reuse `active_power`/`active_hours_per_day` for work and
/// add the travel and solar terms; `capacity` is heads per device for
/// capacity-scaled devices and ha/h per robot for robotic ones.
struct DeviceSpec {
    std::string name;
    DeviceKind kind = DeviceKind::fixed_per_farm;
    double active_power = 0.0;
    double sleep_power = 0.0;
    double travel_power = 0.0;
    double active_hours_per_day = 0.0;
    double sleep_hours_per_day = 0.0;
    double travel_hours_per_day = 0.0;
    double capacity = 0.0;
    double use_periodicity_days = 0.0;
    double passes_per_year = 0.0;
    double solar_daily_supplement = 0.0;  ///< Wh/day
    double embodied_ghg = 0.0;
    double lifetime_years = 1.0;
    std::optional<Dependency> depends_on;
    double allocation_fraction = 1.0;  ///< share of the device's impacts charged to the use-case
    std::string group;                 ///< reporting label; defaults to the device name

    const std::string& group_label() const { return group.empty() ? name : group; }

    bool operator==(const DeviceSpec&) const = default;
};

struct SystemDevice {
    DeviceSpec spec;
    double base_quantity = 1.0;  ///< units per farm for fixed_per_farm devices

    bool operator==(const SystemDevice&) const = default;
};

/// Devices deployed together on a farm for a set of farming tasks.
struct TechnologicalSystem {
    std::string name;
    std::vector<SystemDevice> devices;
    std::vector<std::string> farming_tasks;

    const SystemDevice* find(std::string_view device) const;

    bool operator==(const TechnologicalSystem&) const = default;
};

struct Catalog {
    std::vector<TechnologicalSystem> systems;

    const TechnologicalSystem* find(std::string_view system) const;
    const TechnologicalSystem& at(std::string_view system) const;  ///< throws ConfigError

    bool operator==(const Catalog&) const = default;
};

struct Violation {
    std::string system;
    std::string device;
    std::string message;
};

std::vector<Violation> validate_device(const DeviceSpec& device);

/// Structural checks over every system: device invariants, unique names,
/// dependency targets present and acyclic. An empty result means valid.
std::vector<Violation> validate_catalog(std::span<const TechnologicalSystem> systems);

/// Order in which a system's devices must be evaluated so that every
/// dependency is computed before its dependents. Throws ConfigError on cycles
/// or dangling references.
std::vector<std::size_t> evaluation_order(const TechnologicalSystem& system);

}  // namespace agrifoot
