#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agrifoot {

enum class SizeUnit { heads, hectares };

std::string_view to_string(SizeUnit unit);
SizeUnit parse_size_unit(std::string_view text);

/// Territory as a frequency table: n_i farms of size s_i.
///
/// Sizes are strictly increasing and positive; counts are non-negative and may
/// be fractional (dense reconstructions and expected-value accounting).
class FarmSizeDistribution {
public:
    FarmSizeDistribution(std::vector<double> sizes, std::vector<double> counts, SizeUnit unit);

    std::span<const double> sizes() const noexcept { return sizes_; }
    std::span<const double> counts() const noexcept { return counts_; }
    SizeUnit size_unit() const noexcept { return unit_; }
    std::size_t size() const noexcept { return sizes_.size(); }

    /// Drops every size below `min_size` (used to exclude small farms at ingestion).
    FarmSizeDistribution filtered_min_size(double min_size) const;

private:
    std::vector<double> sizes_;
    std::vector<double> counts_;
    SizeUnit unit_;
};

double total_farms(const FarmSizeDistribution& dist);
double total_size(const FarmSizeDistribution& dist);

/// Mean farm size. Throws EngineError when the distribution holds no farms.
double average_size(const FarmSizeDistribution& dist);

/// Published statistics aggregated into size classes.
struct CoarseBinSpec {
    std::vector<double> bin_edges;
    std::vector<double> bin_counts;
    double target_total_farms = 0.0;
    double target_total_size = 0.0;
    SizeUnit unit = SizeUnit::hectares;
};

/// Throws ConfigError when edges/counts are inconsistent.
void validate(const CoarseBinSpec& coarse);

/// Sum of counts per bin. Bins are half-open [lo, hi) except the last, which is closed.
std::vector<double> bin_totals(const FarmSizeDistribution& dist, std::span<const double> bin_edges);

/// Relative tolerances met by densify().
inline constexpr double kDensifyBinTolerance = 1e-3;
inline constexpr double kDensifySizeTolerance = 5e-3;

/// Rebuilds a dense distribution sampled every `step` over [first edge, last edge].
///
/// The density is piecewise linear with knots at the bin edges and bin midpoints.
/// Knot heights are the non-negative least-squares fit of the per-bin counts and
/// the total size, with a light first-difference penalty that selects the
/// smoothest member of the feasible family. The counts at the sampled sizes are
/// step * density(size); bin sums use the same half-open convention as
/// bin_totals(), so the fitted constraints are exactly the reported ones.
///
/// Throws ReconstructionError when the fit misses either tolerance.
FarmSizeDistribution densify(const CoarseBinSpec& coarse, double step);

/// Delimited text with a header row and columns (size, count). Separator is
/// detected from the header (comma, tab or semicolon).
FarmSizeDistribution read_distribution(std::istream& in, SizeUnit unit);
FarmSizeDistribution read_distribution_file(const std::string& path, SizeUnit unit);

}  // namespace agrifoot
