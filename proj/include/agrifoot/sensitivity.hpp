#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "agrifoot/device_catalog.hpp"
#include "agrifoot/farm_distribution.hpp"
#include "agrifoot/impact.hpp"
#include "agrifoot/table.hpp"
#include "agrifoot/ts_allocation.hpp"

namespace agrifoot {

/// Whether the nominal parameter value is the median or the mean of its log-normal factor.
enum class LognormalCentre { median, mean };

struct PerturbationSpec {
    double relative_std = 0.20;
    bool vary_capacity = true;
    bool vary_lifetime = true;
    bool vary_active_power = true;
    bool vary_solar_supplement = true;
    bool vary_travel_power = false;
    int periodicity_jitter_days = 1;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    LognormalCentre centre = LognormalCentre::median;
    double max_failure_fraction = 0.01;
};

void validate(const PerturbationSpec& spec);

/// sigma of log(factor) such that the factor's coefficient of variation equals `relative_std`.
double lognormal_sigma(double relative_std);

/// Counter-based stream seed for sample `index`: each sample draws from its own
/// SplitMix64 sequence started at mix(seed + (index + 1) * golden gamma), so
/// samples can be evaluated in any order or in parallel.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// SplitMix64 generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    double uniform();        ///< [0, 1) with 53 random bits
    double standard_normal();  ///< Box-Muller, one variate per two uniforms

private:
    std::uint64_t state_;
};

/// Catalog with every device type perturbed for one Monte Carlo sample.
///
/// Device types are identified by name across systems. Per device type, in
/// name order, one standard normal is drawn for each of capacity, lifetime,
/// active power, solar supplement and travel power (whether or not that
/// parameter is varied), followed by one uniform for the periodicity jitter.
/// Multiplicative factors are exp(sigma * z) (median centring) or
/// exp(sigma * z - sigma^2 / 2) (mean centring).
Catalog perturb_catalog(const Catalog& catalog, const PerturbationSpec& spec, std::uint64_t sample_index);

struct SampleSeries {
    std::vector<double> energy_kwh;
    std::vector<double> embodied_kg;
    std::vector<double> use_kg;
    std::vector<double> total_kg;
};

struct SampleFailure {
    std::size_t index = 0;
    std::string message;
};

/// Per-label sample arrays; failed samples hold NaN.
struct SensitivityResult {
    PerturbationSpec spec;
    std::vector<std::string> labels;
    std::vector<SampleSeries> series;
    std::vector<SampleFailure> failures;
};

/// Monte Carlo over a scenario allocation. Labels are the allocation's systems,
/// plus "all" when there is more than one. Throws SensitivityAbort when more
/// than spec.max_failure_fraction of samples fail.
SensitivityResult run_sensitivity(const Catalog& catalog, const AllocationTable& allocation,
                                  const FarmSizeDistribution& dist, const GridIntensity& grid,
                                  const PerturbationSpec& spec, unsigned threads = 1);

/// Monte Carlo over a full deployment of each listed system; each sample uses
/// the same perturbed catalog for every system.
SensitivityResult run_sensitivity_each_system(const Catalog& catalog, const std::vector<std::string>& systems,
                                              const FarmSizeDistribution& dist, const GridIntensity& grid,
                                              const PerturbationSpec& spec, unsigned threads = 1);

struct SummaryRow {
    std::string label;
    std::string metric;
    std::size_t count = 0;
    double mean = 0.0;
    double relative_std = 0.0;
    double p5 = 0.0, p25 = 0.0, p50 = 0.0, p75 = 0.0, p95 = 0.0;
};

/// Linear-interpolation quantile of sorted data (q in [0, 1]).
double quantile_sorted(const std::vector<double>& sorted, double q);

/// Summary statistics per label and metric, ignoring failed (NaN) samples.
std::vector<SummaryRow> summarize(const SensitivityResult& result);

Table samples_table(const SensitivityResult& result);
Table summary_table(const std::vector<SummaryRow>& rows);

}  // namespace agrifoot
