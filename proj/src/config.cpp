#include "agrifoot/config.hpp"

#include <fstream>
#include <map>
#include <set>

#include "agrifoot/errors.hpp"
#include "agrifoot/inventory.hpp"

namespace agrifoot {

namespace fs = std::filesystem;

namespace {

// Typed access to one JSON object with the location kept for error messages.
// Keys never read are reported by finish() as unknown fields.
class Fields {
public:
    Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where))
    {
        if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    const json& raw(const std::string& key)
    {
        seen_.insert(key);
        if (!obj_.contains(key)) throw ConfigError(path(key) + ": required field is missing");
        return obj_.at(key);
    }

    double number(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
        return v.get<double>();
    }

    double number(const std::string& key, double fallback) { return has(key) ? number(key) : (seen_.insert(key), fallback); }

    std::string text(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
        return v.get<std::string>();
    }

    std::string text(const std::string& key, const std::string& fallback)
    {
        return has(key) ? text(key) : (seen_.insert(key), fallback);
    }

    bool flag(const std::string& key, bool fallback)
    {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(path(key) + ": expected true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(path(key) + ": expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(path(key) + "[" + std::to_string(i) + "]: expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    std::vector<std::string> texts(const std::string& key)
    {
        if (!has(key)) return {};
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(path(key) + ": expected an array of strings");
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string()) throw ConfigError(path(key) + "[" + std::to_string(i) + "]: expected a string");
            out.push_back(v[i].get<std::string>());
        }
        return out;
    }

    std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

    void finish() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(path(it.key()) + ": unknown field");
    }

private:
    const json& obj_;
    std::string where_;
    std::set<std::string> seen_;
};

std::string indexed(const std::string& base, std::size_t i)
{
    return base + "[" + std::to_string(i) + "]";
}

DeviceSpec parse_device(const json& obj, const std::string& where)
{
    Fields f(obj, where);
    DeviceSpec d;
    d.name = f.text("name");
    try {
        d.kind = parse_device_kind(f.text("kind"));
    } catch (const ConfigError& e) {
        throw ConfigError(f.path("kind") + ": " + e.what());
    }
    d.active_power = f.number("active_power", 0.0);
    d.sleep_power = f.number("sleep_power", 0.0);
    d.travel_power = f.number("travel_power", 0.0);
    d.active_hours_per_day = f.number("active_hours_per_day", 0.0);
    d.sleep_hours_per_day = f.number("sleep_hours_per_day", 0.0);
    d.travel_hours_per_day = f.number("travel_hours_per_day", 0.0);
    if (f.has("capacity_from")) {
        if (f.has("capacity")) throw ConfigError(where + ": give either capacity or capacity_from, not both");
        Fields c(f.raw("capacity_from"), f.path("capacity_from"));
        const double width = c.number("width_m");
        const double speed = c.number("speed_kmh");
        const double eff = c.number("field_efficiency", 1.0);
        c.finish();
        try {
            d.capacity = derive_capacity(width, speed, eff);
        } catch (const ConfigError& e) {
            throw ConfigError(f.path("capacity_from") + ": " + e.what());
        }
    } else {
        d.capacity = f.number("capacity", 0.0);
    }
    d.use_periodicity_days = f.number("use_periodicity_days", 0.0);
    d.passes_per_year = f.number("passes_per_year", 0.0);
    d.solar_daily_supplement = f.number("solar_daily_supplement", 0.0);
    d.embodied_ghg = f.number("embodied_ghg");
    d.lifetime_years = f.number("lifetime_years");
    if (f.has("depends_on")) {
        Fields dep(f.raw("depends_on"), f.path("depends_on"));
        d.depends_on = Dependency{dep.text("device"), dep.number("ratio", 1.0)};
        dep.finish();
    }
    d.allocation_fraction = f.number("allocation_fraction", 1.0);
    d.group = f.text("group", "");
    f.text("note", "");  // free-form provenance remark, not modelled
    f.finish();

    if (const auto v = validate_device(d); !v.empty()) throw ConfigError(where + " (" + d.name + "): " + v.front().message);
    return d;
}

json device_to_json(const DeviceSpec& d)
{
    json j;
    j["name"] = d.name;
    j["kind"] = std::string(to_string(d.kind));
    j["active_power"] = d.active_power;
    j["sleep_power"] = d.sleep_power;
    j["travel_power"] = d.travel_power;
    j["active_hours_per_day"] = d.active_hours_per_day;
    j["sleep_hours_per_day"] = d.sleep_hours_per_day;
    j["travel_hours_per_day"] = d.travel_hours_per_day;
    j["capacity"] = d.capacity;
    j["use_periodicity_days"] = d.use_periodicity_days;
    j["passes_per_year"] = d.passes_per_year;
    j["solar_daily_supplement"] = d.solar_daily_supplement;
    j["embodied_ghg"] = d.embodied_ghg;
    j["lifetime_years"] = d.lifetime_years;
    if (d.depends_on) j["depends_on"] = {{"device", d.depends_on->device}, {"ratio", d.depends_on->ratio}};
    j["allocation_fraction"] = d.allocation_fraction;
    if (!d.group.empty()) j["group"] = d.group;
    return j;
}

}  // namespace

Catalog parse_catalog(const json& doc)
{
    Fields top(doc, "");
    std::map<std::string, DeviceSpec> devices;
    const json& dev_list = top.raw("devices");
    if (!dev_list.is_array()) throw ConfigError("devices: expected an array");
    for (std::size_t i = 0; i < dev_list.size(); ++i) {
        auto d = parse_device(dev_list[i], indexed("devices", i));
        if (devices.count(d.name)) throw ConfigError(indexed("devices", i) + ": duplicate device name '" + d.name + "'");
        devices.emplace(d.name, std::move(d));
    }

    Catalog catalog;
    const json& sys_list = top.raw("systems");
    if (!sys_list.is_array()) throw ConfigError("systems: expected an array");
    for (std::size_t i = 0; i < sys_list.size(); ++i) {
        const std::string where = indexed("systems", i);
        Fields f(sys_list[i], where);
        TechnologicalSystem ts;
        ts.name = f.text("name");
        const json& entries = f.raw("devices");
        if (!entries.is_array()) throw ConfigError(f.path("devices") + ": expected an array");
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const std::string ew = indexed(f.path("devices"), k);
            std::string name;
            double base = 1.0;
            if (entries[k].is_string()) {
                name = entries[k].get<std::string>();
            } else {
                Fields e(entries[k], ew);
                name = e.text("device");
                base = e.number("base_quantity", 1.0);
                e.finish();
            }
            const auto it = devices.find(name);
            if (it == devices.end()) throw ConfigError(ew + ": unknown device '" + name + "'");
            ts.devices.push_back({it->second, base});
        }
        ts.farming_tasks = f.texts("farming_tasks");
        f.finish();
        catalog.systems.push_back(std::move(ts));
    }
    top.text("note", "");
    top.finish();

    if (const auto v = validate_catalog(catalog.systems); !v.empty()) {
        const auto& first = v.front();
        throw ConfigError("system '" + first.system + "'" + (first.device.empty() ? "" : ", device '" + first.device + "'") +
                          ": " + first.message);
    }
    return catalog;
}

json catalog_to_json(const Catalog& catalog)
{
    json devices = json::array();
    std::set<std::string> written;
    json systems = json::array();
    for (const auto& ts : catalog.systems) {
        json entries = json::array();
        for (const auto& d : ts.devices) {
            if (written.insert(d.spec.name).second) devices.push_back(device_to_json(d.spec));
            entries.push_back({{"device", d.spec.name}, {"base_quantity", d.base_quantity}});
        }
        json s;
        s["name"] = ts.name;
        s["devices"] = std::move(entries);
        s["farming_tasks"] = ts.farming_tasks;
        systems.push_back(std::move(s));
    }
    json out;
    out["devices"] = std::move(devices);
    out["systems"] = std::move(systems);
    return out;
}

namespace {

json read_json_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace

Catalog load_catalog_file(const fs::path& path)
{
    const json doc = read_json_file(path);
    try {
        return parse_catalog(doc);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

AllocationProfile parse_profile(const json& entries)
{
    if (!entries.is_array()) throw ConfigError("profile: expected an array of {ts, a, b, w}");
    AllocationProfile profile;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        Fields f(entries[i], indexed("profile", i));
        AllocationEntry e{f.text("ts"), f.number("a"), f.number("b"), f.number("w", 1.0)};
        f.finish();
        profile.entries.push_back(std::move(e));
    }
    validate(profile);
    return profile;
}

json profile_to_json(const AllocationProfile& profile)
{
    json out = json::array();
    for (const auto& e : profile.entries) out.push_back({{"ts", e.ts}, {"a", e.a}, {"b", e.b}, {"w", e.w}});
    return out;
}

CoarseBinSpec parse_coarse_bins(const json& block, SizeUnit unit, double* step)
{
    Fields f(block, "distribution.coarse");
    CoarseBinSpec c;
    c.bin_edges = f.numbers("bin_edges");
    c.bin_counts = f.numbers("bin_counts");
    c.target_total_farms = f.number("target_total_farms");
    c.target_total_size = f.number("target_total_size");
    c.unit = unit;
    const double s = f.number("step", 1.0);
    if (step) *step = s;
    f.text("note", "");
    f.finish();
    try {
        validate(c);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("distribution.coarse: ") + e.what());
    }
    return c;
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p)
{
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

FarmSizeDistribution parse_distribution(Fields& top, const fs::path& base, SizeUnit unit,
                                        std::optional<CoarseBinSpec>& coarse_out)
{
    Fields f(top.raw("distribution"), "distribution");
    int sources = 0;
    for (const char* k : {"file", "inline", "coarse"}) sources += f.has(k) ? 1 : 0;
    if (sources != 1) throw ConfigError("distribution: give exactly one of file, inline or coarse");

    std::optional<FarmSizeDistribution> dist;
    if (f.has("file")) {
        dist = read_distribution_file(resolve(base, f.text("file")).string(), unit);
    } else if (f.has("inline")) {
        Fields in(f.raw("inline"), "distribution.inline");
        auto sizes = in.numbers("sizes");
        auto counts = in.numbers("counts");
        in.finish();
        try {
            dist.emplace(std::move(sizes), std::move(counts), unit);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("distribution.inline: ") + e.what());
        }
    } else {
        double step = 1.0;
        coarse_out = parse_coarse_bins(f.raw("coarse"), unit, &step);
        dist = densify(*coarse_out, step);
    }
    if (f.has("min_size")) dist = dist->filtered_min_size(f.number("min_size"));
    f.finish();
    return *dist;
}

SensitivityConfig parse_sensitivity(const json& block)
{
    Fields f(block, "sensitivity");
    SensitivityConfig c;
    auto& s = c.spec;
    s.samples = static_cast<std::size_t>(f.number("samples", 10000));
    s.relative_std = f.number("relative_std", 0.20);
    s.periodicity_jitter_days = static_cast<int>(f.number("periodicity_jitter_days", 1));
    s.max_failure_fraction = f.number("max_failure_fraction", 0.01);
    const std::string centre = f.text("centre", "median");
    if (centre == "median") s.centre = LognormalCentre::median;
    else if (centre == "mean") s.centre = LognormalCentre::mean;
    else throw ConfigError("sensitivity.centre: expected median or mean");
    if (f.has("vary")) {
        Fields v(f.raw("vary"), "sensitivity.vary");
        s.vary_capacity = v.flag("capacity", true);
        s.vary_lifetime = v.flag("lifetime_years", true);
        s.vary_active_power = v.flag("active_power", true);
        s.vary_solar_supplement = v.flag("solar_daily_supplement", true);
        s.vary_travel_power = v.flag("travel_power", false);
        v.finish();
    }
    const std::string mode = f.text("mode", "scenario");
    if (mode == "scenario") c.mode = SensitivityMode::scenario;
    else if (mode == "each_system") c.mode = SensitivityMode::each_system;
    else throw ConfigError("sensitivity.mode: expected scenario or each_system");
    c.systems = f.texts("systems");
    f.finish();
    try {
        validate(s);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("sensitivity: ") + e.what());
    }
    return c;
}

ThermalConfig parse_thermal(const json& block)
{
    Fields f(block, "thermal_baseline");
    ThermalConfig t;
    if (f.has("surface_ha")) t.surface_ha = f.number("surface_ha");
    t.kg_co2e_per_litre = f.number("kg_co2e_per_litre");
    const json& ops = f.raw("operations");
    if (!ops.is_array()) throw ConfigError("thermal_baseline.operations: expected an array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
        Fields o(ops[i], indexed("thermal_baseline.operations", i));
        t.operations.push_back({o.text("operation"), o.number("litres_per_ha"), o.number("passes", 1.0)});
        o.finish();
    }
    f.text("note", "");
    f.finish();
    return t;
}

}  // namespace

ScenarioConfig parse_scenario(const json& doc, const fs::path& base_dir)
{
    Fields f(doc, "");
    ScenarioConfig c;
    c.name = f.text("name");
    c.use_case = f.text("use_case", "");
    f.text("note", "");
    SizeUnit unit;
    try {
        unit = parse_size_unit(f.text("size_unit"));
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("size_unit: ") + e.what());
    }
    c.distribution = parse_distribution(f, base_dir, unit, c.coarse_bins);

    c.catalog_path = resolve(base_dir, f.text("catalog"));
    c.catalog = load_catalog_file(c.catalog_path);

    if (f.has("full_deployment") && f.has("profile"))
        throw ConfigError("full_deployment and profile are mutually exclusive; give exactly one");
    if (f.has("full_deployment")) {
        c.full_deployment = f.text("full_deployment");
        if (!c.catalog.find(*c.full_deployment))
            throw ConfigError("full_deployment: unknown technological system '" + *c.full_deployment + "'");
    } else if (f.has("profile")) {
        c.profile = parse_profile(f.raw("profile"));
        for (std::size_t i = 0; i < c.profile->entries.size(); ++i)
            if (!c.catalog.find(c.profile->entries[i].ts))
                throw ConfigError(indexed("profile", i) + ".ts: unknown technological system '" +
                                  c.profile->entries[i].ts + "'");
    } else {
        throw ConfigError("one of full_deployment or profile is required");
    }

    if (f.has("grid")) {
        Fields g(f.raw("grid"), "grid");
        c.grid.name = g.text("name", "FR");
        c.grid.g_per_kwh = g.number("intensity_g_per_kwh");
        g.finish();
        try {
            validate(c.grid);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("grid.intensity_g_per_kwh: ") + e.what());
        }
    }

    if (f.has("seed")) {
        const json& s = f.raw("seed");
        if (!s.is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (f.has("sensitivity")) {
        c.sensitivity = parse_sensitivity(f.raw("sensitivity"));
        c.sensitivity->spec.seed = c.seed;
        for (const auto& ts : c.sensitivity->systems)
            if (!c.catalog.find(ts)) throw ConfigError("sensitivity.systems: unknown technological system '" + ts + "'");
    }
    if (f.has("thermal_baseline")) c.thermal = parse_thermal(f.raw("thermal_baseline"));
    c.output_dir = resolve(base_dir, f.text("output_dir", "out/" + c.name));
    f.finish();
    return c;
}

ScenarioConfig load_scenario(const fs::path& path)
{
    const json doc = read_json_file(path);
    try {
        auto c = parse_scenario(doc, path.parent_path());
        c.source = path;
        return c;
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace agrifoot
