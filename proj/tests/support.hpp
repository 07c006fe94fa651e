#pragma once

#include <filesystem>
#include <string>

#include "agrifoot/device_catalog.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& rel)
{
    return std::filesystem::path(AGRIFOOT_FIXTURE_DIR) / rel;
}

inline agrifoot::DeviceSpec fixed(const std::string& name, double power, double hours, double embodied,
                                  double lifetime)
{
    agrifoot::DeviceSpec d;
    d.name = name;
    d.kind = agrifoot::DeviceKind::fixed_per_farm;
    d.active_power = power;
    d.active_hours_per_day = hours;
    d.embodied_ghg = embodied;
    d.lifetime_years = lifetime;
    return d;
}

inline agrifoot::DeviceSpec scaled(const std::string& name, double capacity, double power, double hours,
                                   double embodied, double lifetime)
{
    auto d = fixed(name, power, hours, embodied, lifetime);
    d.kind = agrifoot::DeviceKind::capacity_scaled;
    d.capacity = capacity;
    return d;
}

inline agrifoot::DeviceSpec robot(const std::string& name, double capacity, double periodicity,
                                  double active_hours, double passes, double power)
{
    agrifoot::DeviceSpec d;
    d.name = name;
    d.kind = agrifoot::DeviceKind::robotic;
    d.capacity = capacity;
    d.use_periodicity_days = periodicity;
    d.active_hours_per_day = active_hours;
    d.passes_per_year = passes;
    d.active_power = power;
    d.embodied_ghg = 1000;
    d.lifetime_years = 10;
    return d;
}

inline agrifoot::TechnologicalSystem system(const std::string& name,
                                            std::initializer_list<agrifoot::DeviceSpec> devices)
{
    agrifoot::TechnologicalSystem ts;
    ts.name = name;
    for (const auto& d : devices) ts.devices.push_back({d, 1.0});
    return ts;
}

}  // namespace testing
