#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agrifoot/device_catalog.hpp"
#include "agrifoot/farm_distribution.hpp"
#include "agrifoot/table.hpp"
#include "agrifoot/ts_allocation.hpp"

namespace agrifoot {

inline constexpr double kDaysPerYear = 365.0;

/// ceil(x), except that values within 1e-12 (relative) of an integer are taken as
/// that integer. Capacities are entered as decimals that binary doubles cannot
/// hold exactly; a farm sitting exactly on a capacity boundary must not get an
/// extra device because of representation error.
double boundary_ceil(double x);

/// Units of `device` on a farm of `size`.
///
/// fixed_per_farm: base_quantity; capacity_scaled: ceil(size / capacity);
/// dependent: ceil(ratio * parent_quantity); robotic: robot_quantity().
/// Throws EngineError for a non-positive capacity on a scaled device, or a
/// dependent device evaluated without its parent quantity.
double device_quantity(const DeviceSpec& device, double size, double base_quantity = 1.0,
                       std::optional<double> parent_quantity = std::nullopt);

/// Robots needed so that one pass over `size` hectares fits in the seasonal
/// window: ceil(size / (use_periodicity_days * capacity * active_hours_per_day)).
double robot_quantity(const DeviceSpec& robot, double size);

/// Hours each robot works to cover `size` when `robots` share the surface.
double robot_total_work_time(const DeviceSpec& robot, double size, double robots);

/// Working days per pass for each robot: ceil(total work time / active hours per day).
double robot_work_days(const DeviceSpec& robot, double size, double robots);

/// Wh/year of `quantity` non-robotic units: q * 365 * (Ta*Pa + Ts*Ps).
double annual_energy_nonrobotic(const DeviceSpec& device, double quantity);

/// Wh/year of the whole robot fleet on a farm of `size`:
/// D * q * (Pa * Ttotal + (Ptravel * Ttravel - Esp) * days), clamped at zero.
double annual_energy_robotic(const DeviceSpec& robot, double size);

/// Treatment capacity in ha/h from working width (m), speed (km/h) and field efficiency.
double derive_capacity(double width_m, double speed_kmh, double field_efficiency);

/// Per-farm quantities and energy for one device of a system.
struct FarmDevice {
    std::size_t device_index = 0;  ///< index into TechnologicalSystem::devices
    double quantity = 0.0;
    double annual_energy_wh = 0.0;
    std::optional<std::string> warning;
};

/// Instantiates every device of `system` for one farm of `size`, in the
/// system's device order.
std::vector<FarmDevice> instantiate_farm(const TechnologicalSystem& system, double size);

struct InventoryRecord {
    double farm_size = 0.0;
    std::string ts;
    std::string device;
    double farms = 0.0;               ///< n_i * t_j(s_i)
    double per_farm_quantity = 0.0;   ///< q_d(s_i) or q_r(s_i)
    double scaled_quantity = 0.0;     ///< per_farm_quantity * farms
    double annual_energy_per_farm = 0.0;  ///< Wh/year

    double annual_energy_wh() const { return annual_energy_per_farm * farms; }
};

struct Inventory {
    SizeUnit unit = SizeUnit::heads;
    std::vector<InventoryRecord> records;  ///< ordered by (size, system column, device)
    std::vector<std::string> warnings;
};

/// Device inventory of a territory. Cells (size, system) with zero share are
/// omitted. Sizes may be evaluated on `threads` worker threads; the result is
/// identical to the sequential one.
Inventory build_inventory(const Catalog& catalog, const AllocationTable& allocation,
                          const FarmSizeDistribution& dist, unsigned threads = 1);

Table inventory_table(const Inventory& inventory);

}  // namespace agrifoot
