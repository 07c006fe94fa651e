#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "agrifoot/device_catalog.hpp"
#include "agrifoot/farm_distribution.hpp"
#include "agrifoot/impact.hpp"
#include "agrifoot/sensitivity.hpp"
#include "agrifoot/ts_allocation.hpp"

namespace agrifoot {

using json = nlohmann::ordered_json;

/// Catalog document: top-level `devices` (DeviceSpec objects, field names as in
/// the struct) and `systems` ({name, devices: [{device, base_quantity}], farming_tasks}).
/// A robotic device may give `capacity_from: {width_m, speed_kmh, field_efficiency}`
/// instead of `capacity`. Errors name the offending field, e.g. `devices[2].lifetime_years`.
Catalog parse_catalog(const json& doc);
json catalog_to_json(const Catalog& catalog);
Catalog load_catalog_file(const std::filesystem::path& path);

AllocationProfile parse_profile(const json& entries);
json profile_to_json(const AllocationProfile& profile);

CoarseBinSpec parse_coarse_bins(const json& block, SizeUnit unit, double* step);

enum class SensitivityMode { scenario, each_system };

struct SensitivityConfig {
    PerturbationSpec spec;
    SensitivityMode mode = SensitivityMode::scenario;
    std::vector<std::string> systems;  ///< each_system mode; empty means every catalog system
};

struct ThermalConfig {
    std::optional<double> surface_ha;  ///< defaults to the distribution's total size
    double kg_co2e_per_litre = 0.0;
    std::vector<FuelPass> operations;
};

/// A fully loaded scenario: referenced files are read and the distribution is
/// materialized (including dense reconstruction from coarse bins).
struct ScenarioConfig {
    std::filesystem::path source;
    std::string name;
    std::string use_case;
    FarmSizeDistribution distribution{{}, {}, SizeUnit::heads};
    std::optional<CoarseBinSpec> coarse_bins;
    std::filesystem::path catalog_path;
    Catalog catalog;
    std::optional<std::string> full_deployment;
    std::optional<AllocationProfile> profile;
    GridIntensity grid;
    std::uint64_t seed = 0;
    std::optional<SensitivityConfig> sensitivity;
    std::optional<ThermalConfig> thermal;
    std::filesystem::path output_dir;
};

/// Relative paths resolve against the directory holding the scenario file.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const json& doc, const std::filesystem::path& base_dir);

}  // namespace agrifoot
