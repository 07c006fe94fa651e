#include "agrifoot/ts_allocation.hpp"

#include <algorithm>
#include <cmath>

#include "agrifoot/errors.hpp"
#include "agrifoot/table.hpp"

namespace agrifoot {

double quartic_bell(double m)
{
    const double u = 1.0 - m * m;
    return u * u;
}

void validate(const AllocationProfile& profile)
{
    if (profile.entries.empty()) throw ConfigError("allocation profile has no entries");
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const auto& e = profile.entries[i];
        const std::string where = "profile entry " + std::to_string(i) + " (" + e.ts + ")";
        if (e.ts.empty()) throw ConfigError(where + ": ts is empty");
        if (!(e.a < e.b)) throw ConfigError(where + ": a must be smaller than b");
        if (!(e.w >= 0.0 && e.w <= 1.0)) throw ConfigError(where + ": w must lie in [0, 1]");
    }
}

double support_position(const AllocationEntry& entry, double s)
{
    return 2.0 * (s - entry.a) / (entry.b - entry.a) - 1.0;
}

double raw_weight(const AllocationEntry& entry, double s, BellShape shape)
{
    if (s < entry.a || s > entry.b) return 0.0;
    const double m = std::clamp(support_position(entry, s), -1.0, 1.0);
    return entry.w * shape(m);
}

std::vector<TsShare> mass_function(const AllocationProfile& profile, double s)
{
    std::vector<TsShare> out;
    out.reserve(profile.entries.size());
    double total = 0.0;
    for (const auto& e : profile.entries) {
        const double r = raw_weight(e, s, profile.shape);
        out.push_back({e.ts, r});
        total += r;
    }
    if (!(total > 0.0))
        throw CoverageError({s}, "allocation profile has zero total weight at size " + format_number(s));
    for (auto& t : out) t.share /= total;
    return out;
}

std::vector<double> coverage_gaps(const AllocationProfile& profile, std::span<const double> sizes)
{
    std::vector<double> gaps;
    for (double s : sizes) {
        double total = 0.0;
        for (const auto& e : profile.entries) total += raw_weight(e, s, profile.shape);
        if (!(total > 0.0)) gaps.push_back(s);
    }
    return gaps;
}

AllocationTable allocation_table(const AllocationProfile& profile, const FarmSizeDistribution& dist)
{
    validate(profile);
    const auto gaps = coverage_gaps(profile, dist.sizes());
    if (!gaps.empty()) {
        std::string list;
        for (std::size_t i = 0; i < gaps.size() && i < 20; ++i) list += (i ? ", " : "") + format_number(gaps[i]);
        if (gaps.size() > 20) list += ", ... (" + std::to_string(gaps.size()) + " sizes)";
        throw CoverageError(gaps, "allocation profile leaves sizes uncovered: " + list);
    }

    AllocationTable table;
    std::vector<std::size_t> column_of;
    for (const auto& e : profile.entries) {
        auto it = std::find(table.systems.begin(), table.systems.end(), e.ts);
        column_of.push_back(static_cast<std::size_t>(it - table.systems.begin()));
        if (it == table.systems.end()) table.systems.push_back(e.ts);
    }
    table.sizes.assign(dist.sizes().begin(), dist.sizes().end());
    table.shares.reserve(table.sizes.size());
    for (double s : table.sizes) {
        std::vector<double> row(table.systems.size(), 0.0);
        const auto shares = mass_function(profile, s);
        for (std::size_t j = 0; j < shares.size(); ++j) row[column_of[j]] += shares[j].share;
        table.shares.push_back(std::move(row));
    }
    return table;
}

AllocationTable full_deployment_table(const std::string& ts, const FarmSizeDistribution& dist)
{
    AllocationTable table;
    table.sizes.assign(dist.sizes().begin(), dist.sizes().end());
    table.systems = {ts};
    table.shares.assign(table.sizes.size(), std::vector<double>{1.0});
    return table;
}

}  // namespace agrifoot
