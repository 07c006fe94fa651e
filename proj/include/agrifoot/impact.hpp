#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agrifoot/device_catalog.hpp"
#include "agrifoot/farm_distribution.hpp"
#include "agrifoot/inventory.hpp"
#include "agrifoot/table.hpp"

namespace agrifoot {

/// Electricity carbon intensity in g CO2e/kWh.
struct GridIntensity {
    std::string name = "FR";
    double g_per_kwh = 68.0;
};

void validate(const GridIntensity& grid);

/// Annualized cradle-to-gate emissions: quantity * embodied * allocation / lifetime (kg CO2e/year).
double embodied_annual(const DeviceSpec& device, double quantity);

/// kg CO2e/year from Wh/year.
double use_annual(double energy_wh_per_year, const GridIntensity& grid);

/// Annual footprint of one slice of the territory (kg CO2e/year, kWh/year).
struct Footprint {
    double embodied_kg = 0.0;
    double use_kg = 0.0;
    double energy_kwh = 0.0;

    double total_kg() const { return embodied_kg + use_kg; }
    Footprint& operator+=(const Footprint& o)
    {
        embodied_kg += o.embodied_kg;
        use_kg += o.use_kg;
        energy_kwh += o.energy_kwh;
        return *this;
    }
};

Footprint operator*(const Footprint& f, double k);

struct AssessmentRecord {
    double farm_size = 0.0;
    std::string ts;
    std::string device;
    std::string group;
    double farms = 0.0;
    Footprint footprint;
};

/// Records are in inventory order; breakdowns are keyed and sorted, and every
/// sum runs in that fixed order.
struct AssessmentResult {
    SizeUnit unit = SizeUnit::heads;
    std::vector<AssessmentRecord> records;
    Footprint totals;
    std::vector<std::pair<std::string, Footprint>> by_device;  ///< keyed by device group label
    std::vector<std::pair<std::string, Footprint>> by_ts;
    std::vector<std::pair<double, Footprint>> by_size;
};

AssessmentResult assess(const Inventory& inventory, const Catalog& catalog, const GridIntensity& grid);

/// Footprint of one average-size farm multiplied by the number of farms.
Footprint assess_average_baseline(const Catalog& catalog, const std::string& ts,
                                  const FarmSizeDistribution& dist, const GridIntensity& grid);

/// Average-size baseline for a mixed allocation: each system is charged its
/// territory-wide share of farms at the average size.
Footprint assess_average_baseline(const Catalog& catalog, const AllocationTable& allocation,
                                  const FarmSizeDistribution& dist, const GridIntensity& grid);

struct EfficiencyPoint {
    double size = 0.0;
    double total_kg_per_unit = 0.0;
    double use_kg_per_unit = 0.0;
    double energy_kwh_per_unit = 0.0;
};

/// Per size unit (head or hectare) emissions at each farm size. Sizes with no
/// farms are skipped. Throws EngineError when units differ.
std::vector<EfficiencyPoint> efficiency_curve(const AssessmentResult& result, const FarmSizeDistribution& dist);

struct FuelPass {
    std::string operation;
    double litres_per_ha = 0.0;
    double passes = 1.0;
};

/// Non-road diesel comparator: surface * sum(passes * litres/ha) * emission factor (kg CO2e/year).
double thermal_baseline(double surface_ha, std::span<const FuelPass> passes, double kg_co2e_per_litre);

Table breakdown_table(const std::vector<std::pair<std::string, Footprint>>& rows, const std::string& key);
Table size_breakdown_table(const AssessmentResult& result);
Table totals_table(const AssessmentResult& result);
Table efficiency_table(const std::vector<EfficiencyPoint>& curve, SizeUnit unit);

}  // namespace agrifoot
