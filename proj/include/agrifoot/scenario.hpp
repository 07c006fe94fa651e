#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "agrifoot/config.hpp"
#include "agrifoot/impact.hpp"
#include "agrifoot/inventory.hpp"
#include "agrifoot/sensitivity.hpp"
#include "agrifoot/table.hpp"
#include "agrifoot/ts_allocation.hpp"

namespace agrifoot {

struct RunOptions {
    std::optional<std::filesystem::path> output_dir;  ///< overrides the config's output_dir
    std::optional<std::uint64_t> seed;                 ///< overrides the config's seed
    unsigned threads = 1;
    TableFormat format = TableFormat::csv;
};

struct BaselineRow {
    std::string ts;  ///< system name or "all"
    Footprint distribution;
    Footprint average;

    /// (average - distribution) / distribution on total emissions.
    double relative_gap() const;
};

struct ThermalComparison {
    double surface_ha = 0.0;
    double litres_per_ha = 0.0;
    double thermal_kg = 0.0;
};

struct ScenarioRun {
    std::string name;
    SizeUnit unit = SizeUnit::heads;
    double farms = 0.0;
    double size_total = 0.0;
    AllocationTable allocation;
    Inventory inventory;
    AssessmentResult result;
    std::vector<BaselineRow> baseline;
    std::vector<EfficiencyPoint> efficiency;
    std::optional<SensitivityResult> sensitivity;
    std::optional<ThermalComparison> thermal;
};

AllocationTable scenario_allocation(const ScenarioConfig& config);

/// Inventory, assessment, baselines, efficiency curve and the optional
/// sensitivity and thermal blocks. No files are written.
ScenarioRun evaluate_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Writes every output table of `run` into `dir` (created if missing) and
/// returns the written paths in a fixed order.
std::vector<std::filesystem::path> write_outputs(const ScenarioRun& run, const std::filesystem::path& dir,
                                                 TableFormat format);

/// One-screen text summary of totals.
std::string summary_text(const ScenarioRun& run);

Table allocation_export(const AllocationTable& allocation, SizeUnit unit);
Table baseline_table(const std::vector<BaselineRow>& rows);

/// Side-by-side totals and per-device-group breakdowns, one column per run.
/// Throws ConfigError for fewer than two runs or mixed size units.
Table compare_runs(const std::vector<ScenarioRun>& runs);

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

/// Dry run: schema, catalog and coverage checks without computing an inventory.
ValidationReport validate_scenario(const std::filesystem::path& path);

}  // namespace agrifoot
