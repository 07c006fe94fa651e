#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "agrifoot/errors.hpp"
#include "agrifoot/scenario.hpp"

namespace py = pybind11;
using namespace agrifoot;

namespace {

py::dict footprint_dict(const Footprint& f)
{
    py::dict d;
    d["embodied_kg"] = f.embodied_kg;
    d["use_kg"] = f.use_kg;
    d["total_kg"] = f.total_kg();
    d["energy_kwh"] = f.energy_kwh;
    return d;
}

py::dict run_dict(const ScenarioRun& run, const std::vector<std::filesystem::path>& files)
{
    py::dict d;
    d["name"] = run.name;
    d["unit"] = std::string(to_string(run.unit));
    d["farms"] = run.farms;
    d["size_total"] = run.size_total;
    d["totals"] = footprint_dict(run.result.totals);
    py::dict by_ts, by_device, baseline;
    for (const auto& [k, f] : run.result.by_ts) by_ts[py::str(k)] = footprint_dict(f);
    for (const auto& [k, f] : run.result.by_device) by_device[py::str(k)] = footprint_dict(f);
    for (const auto& row : run.baseline) baseline[py::str(row.ts)] = footprint_dict(row.average);
    d["by_ts"] = by_ts;
    d["by_device"] = by_device;
    d["average_baseline"] = baseline;
    py::list curve;
    for (const auto& p : run.efficiency)
        curve.append(py::make_tuple(p.size, p.total_kg_per_unit, p.use_kg_per_unit, p.energy_kwh_per_unit));
    d["efficiency"] = curve;
    if (run.thermal) d["thermal_kg"] = run.thermal->thermal_kg;
    if (run.sensitivity) d["sensitivity_samples"] = run.sensitivity->spec.samples;
    py::list written;
    for (const auto& f : files) written.append(f.string());
    d["files"] = written;
    return d;
}

}  // namespace

PYBIND11_MODULE(_agrifoot, m)
{
    m.doc() = "Territorial carbon footprint of digital agriculture deployments.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);

    py::enum_<SizeUnit>(m, "SizeUnit")
        .value("heads", SizeUnit::heads)
        .value("hectares", SizeUnit::hectares);

    py::enum_<DeviceKind>(m, "DeviceKind")
        .value("fixed_per_farm", DeviceKind::fixed_per_farm)
        .value("capacity_scaled", DeviceKind::capacity_scaled)
        .value("dependent", DeviceKind::dependent)
        .value("robotic", DeviceKind::robotic);

    py::class_<FarmSizeDistribution>(m, "FarmSizeDistribution")
        .def(py::init<std::vector<double>, std::vector<double>, SizeUnit>(), py::arg("sizes"), py::arg("counts"),
             py::arg("unit") = SizeUnit::heads)
        .def_property_readonly("sizes", [](const FarmSizeDistribution& d) {
            return std::vector<double>(d.sizes().begin(), d.sizes().end());
        })
        .def_property_readonly("counts", [](const FarmSizeDistribution& d) {
            return std::vector<double>(d.counts().begin(), d.counts().end());
        })
        .def_property_readonly("unit", &FarmSizeDistribution::size_unit)
        .def("total_farms", [](const FarmSizeDistribution& d) { return total_farms(d); })
        .def("total_size", [](const FarmSizeDistribution& d) { return total_size(d); })
        .def("average_size", [](const FarmSizeDistribution& d) { return average_size(d); })
        .def("__len__", &FarmSizeDistribution::size);

    m.def(
        "densify",
        [](std::vector<double> edges, std::vector<double> counts, double farms, double size, double step,
           SizeUnit unit) {
            return densify(CoarseBinSpec{std::move(edges), std::move(counts), farms, size, unit}, step);
        },
        py::arg("bin_edges"), py::arg("bin_counts"), py::arg("target_total_farms"), py::arg("target_total_size"),
        py::arg("step") = 1.0, py::arg("unit") = SizeUnit::hectares);

    py::class_<AllocationEntry>(m, "AllocationEntry")
        .def(py::init<std::string, double, double, double>(), py::arg("ts"), py::arg("a"), py::arg("b"),
             py::arg("w") = 1.0)
        .def_readwrite("ts", &AllocationEntry::ts)
        .def_readwrite("a", &AllocationEntry::a)
        .def_readwrite("b", &AllocationEntry::b)
        .def_readwrite("w", &AllocationEntry::w);

    m.def(
        "raw_weight", [](const AllocationEntry& e, double s) { return raw_weight(e, s); }, py::arg("entry"),
        py::arg("size"));
    m.def(
        "mass_function",
        [](const std::vector<AllocationEntry>& entries, double s) {
            AllocationProfile profile{entries};
            validate(profile);
            std::vector<std::pair<std::string, double>> out;
            for (const auto& share : mass_function(profile, s)) out.emplace_back(share.ts, share.share);
            return out;
        },
        py::arg("entries"), py::arg("size"));

    py::class_<DeviceSpec>(m, "DeviceSpec")
        .def(py::init<>())
        .def_readwrite("name", &DeviceSpec::name)
        .def_readwrite("kind", &DeviceSpec::kind)
        .def_readwrite("active_power", &DeviceSpec::active_power)
        .def_readwrite("sleep_power", &DeviceSpec::sleep_power)
        .def_readwrite("travel_power", &DeviceSpec::travel_power)
        .def_readwrite("active_hours_per_day", &DeviceSpec::active_hours_per_day)
        .def_readwrite("sleep_hours_per_day", &DeviceSpec::sleep_hours_per_day)
        .def_readwrite("travel_hours_per_day", &DeviceSpec::travel_hours_per_day)
        .def_readwrite("capacity", &DeviceSpec::capacity)
        .def_readwrite("use_periodicity_days", &DeviceSpec::use_periodicity_days)
        .def_readwrite("passes_per_year", &DeviceSpec::passes_per_year)
        .def_readwrite("solar_daily_supplement", &DeviceSpec::solar_daily_supplement)
        .def_readwrite("embodied_ghg", &DeviceSpec::embodied_ghg)
        .def_readwrite("lifetime_years", &DeviceSpec::lifetime_years)
        .def_readwrite("allocation_fraction", &DeviceSpec::allocation_fraction)
        .def_readwrite("group", &DeviceSpec::group);

    m.def(
        "device_quantity",
        [](const DeviceSpec& d, double size, double base) { return device_quantity(d, size, base); },
        py::arg("device"), py::arg("size"), py::arg("base_quantity") = 1.0);
    m.def("annual_energy_nonrobotic", &annual_energy_nonrobotic, py::arg("device"), py::arg("quantity"));
    m.def("annual_energy_robotic", &annual_energy_robotic, py::arg("robot"), py::arg("size"));
    m.def("derive_capacity", &derive_capacity, py::arg("width_m"), py::arg("speed_kmh"),
          py::arg("field_efficiency"));
    m.def("embodied_annual", &embodied_annual, py::arg("device"), py::arg("quantity"));
    m.def(
        "use_annual",
        [](double wh, double g_per_kwh) { return use_annual(wh, GridIntensity{"custom", g_per_kwh}); },
        py::arg("energy_wh"), py::arg("g_per_kwh") = 68.0);
    m.def(
        "thermal_baseline",
        [](double surface, const std::vector<std::pair<double, double>>& ops, double factor) {
            std::vector<FuelPass> passes;
            for (const auto& [litres, n] : ops) passes.push_back({"", litres, n});
            return thermal_baseline(surface, passes, factor);
        },
        py::arg("surface_ha"), py::arg("operations"), py::arg("kg_co2e_per_litre"),
        "operations is a list of (litres_per_ha, passes) pairs");

    m.def(
        "run_scenario",
        [](const std::filesystem::path& path, std::optional<std::filesystem::path> out,
           std::optional<std::uint64_t> seed, unsigned threads) {
            const auto config = load_scenario(path);
            RunOptions opts;
            opts.output_dir = out;
            opts.seed = seed;
            opts.threads = threads;
            ScenarioRun run;
            std::vector<std::filesystem::path> files;
            {
                py::gil_scoped_release release;
                run = evaluate_scenario(config, opts);
                if (out) files = write_outputs(run, *out, opts.format);
            }
            return run_dict(run, files);
        },
        py::arg("path"), py::arg("out") = py::none(), py::arg("seed") = py::none(), py::arg("threads") = 1,
        "Evaluate a scenario file; writes the output tables when out is given.");
    m.def(
        "validate_scenario", [](const std::filesystem::path& path) { return validate_scenario(path).issues; },
        py::arg("path"), "List of problems found; empty when the scenario is valid.");
}
