#pragma once

#include <span>
#include <string>
#include <vector>

#include "agrifoot/farm_distribution.hpp"

namespace agrifoot {

/// Bell-shaped weighting evaluated at the position m in [-1, 1] of a size within its support.
/// Must be non-negative, peak at m = 0 with value 1, and vanish at |m| = 1.
using BellShape = double (*)(double m);

/// (1 - m^2)^2: compact support, C1 at both ends.
double quartic_bell(double m);

/// Adoption of one system over the farm-size range [a, b] with relative weight w.
struct AllocationEntry {
    std::string ts;
    double a = 0.0;
    double b = 0.0;
    double w = 1.0;

    bool operator==(const AllocationEntry&) const = default;
};

struct AllocationProfile {
    std::vector<AllocationEntry> entries;
    BellShape shape = quartic_bell;
};

/// Throws ConfigError unless a < b and 0 <= w <= 1 for every entry.
void validate(const AllocationProfile& profile);

/// Linear map of s from [a, b] onto [-1, 1].
double support_position(const AllocationEntry& entry, double s);

/// w * shape(m(s)) inside [a, b], exactly zero outside.
double raw_weight(const AllocationEntry& entry, double s, BellShape shape = quartic_bell);

struct TsShare {
    std::string ts;
    double share = 0.0;
};

/// Normalized shares t_j(s), one per profile entry in entry order.
/// Throws CoverageError when every raw weight vanishes at s.
std::vector<TsShare> mass_function(const AllocationProfile& profile, double s);

/// Share matrix t_j(s_i): one row per distribution size, one column per distinct
/// system name (first-appearance order). Entries sharing a name are summed.
struct AllocationTable {
    std::vector<double> sizes;
    std::vector<std::string> systems;
    std::vector<std::vector<double>> shares;  ///< shares[row][column]

    double at(std::size_t row, std::size_t column) const { return shares[row][column]; }
};

/// Throws CoverageError listing every uncovered size.
AllocationTable allocation_table(const AllocationProfile& profile, const FarmSizeDistribution& dist);

/// Every farm equipped with `ts`.
AllocationTable full_deployment_table(const std::string& ts, const FarmSizeDistribution& dist);

/// Sizes where the profile's total raw weight vanishes.
std::vector<double> coverage_gaps(const AllocationProfile& profile, std::span<const double> sizes);

}  // namespace agrifoot
