#include "agrifoot/farm_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "agrifoot/errors.hpp"
#include "agrifoot/table.hpp"
#include "nnls.hpp"

namespace agrifoot {

std::string_view to_string(SizeUnit unit)
{
    return unit == SizeUnit::heads ? "heads" : "hectares";
}

SizeUnit parse_size_unit(std::string_view text)
{
    if (text == "heads") return SizeUnit::heads;
    if (text == "hectares" || text == "ha") return SizeUnit::hectares;
    throw ConfigError("unknown size unit '" + std::string(text) + "' (expected heads or hectares)");
}

FarmSizeDistribution::FarmSizeDistribution(std::vector<double> sizes, std::vector<double> counts,
                                           SizeUnit unit)
    : sizes_(std::move(sizes)), counts_(std::move(counts)), unit_(unit)
{
    if (sizes_.size() != counts_.size())
        throw ConfigError("distribution has " + std::to_string(sizes_.size()) + " sizes but " +
                          std::to_string(counts_.size()) + " counts");
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (!(sizes_[i] > 0.0) || !std::isfinite(sizes_[i]))
            throw ConfigError("farm size at row " + std::to_string(i) + " must be positive");
        if (i > 0 && !(sizes_[i] > sizes_[i - 1]))
            throw ConfigError("farm sizes must be strictly increasing (row " + std::to_string(i) + ")");
        if (!(counts_[i] >= 0.0) || !std::isfinite(counts_[i]))
            throw ConfigError("farm count at row " + std::to_string(i) + " must be non-negative");
    }
}

FarmSizeDistribution FarmSizeDistribution::filtered_min_size(double min_size) const
{
    std::vector<double> s, n;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (sizes_[i] >= min_size) {
            s.push_back(sizes_[i]);
            n.push_back(counts_[i]);
        }
    }
    return {std::move(s), std::move(n), unit_};
}

double total_farms(const FarmSizeDistribution& dist)
{
    const auto n = dist.counts();
    return std::accumulate(n.begin(), n.end(), 0.0);
}

double total_size(const FarmSizeDistribution& dist)
{
    const auto s = dist.sizes();
    const auto n = dist.counts();
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sum += s[i] * n[i];
    return sum;
}

double average_size(const FarmSizeDistribution& dist)
{
    const double farms = total_farms(dist);
    if (!(farms > 0.0)) throw EngineError("average size of an empty distribution");
    return total_size(dist) / farms;
}

void validate(const CoarseBinSpec& coarse)
{
    const auto& e = coarse.bin_edges;
    if (e.size() < 2) throw ConfigError("bin_edges needs at least two entries");
    if (e.size() != coarse.bin_counts.size() + 1)
        throw ConfigError("bin_edges must have exactly one more entry than bin_counts");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!(e[i] > 0.0)) throw ConfigError("bin_edges must be positive");
        if (i > 0 && !(e[i] > e[i - 1])) throw ConfigError("bin_edges must be strictly increasing");
    }
    for (double c : coarse.bin_counts)
        if (!(c >= 0.0)) throw ConfigError("bin_counts must be non-negative");
    const double sum = std::accumulate(coarse.bin_counts.begin(), coarse.bin_counts.end(), 0.0);
    if (std::abs(sum - coarse.target_total_farms) > 0.5)
        throw ConfigError("bin_counts sum to " + format_number(sum) + " but target_total_farms is " +
                          format_number(coarse.target_total_farms));
    if (!(coarse.target_total_size > 0.0)) throw ConfigError("target_total_size must be positive");
}

namespace {

// Index of the half-open bin [e_b, e_{b+1}) holding s; the last bin is closed.
std::ptrdiff_t bin_of(std::span<const double> edges, double s)
{
    const std::size_t nb = edges.size() - 1;
    if (s < edges.front() || s > edges.back()) return -1;
    if (s == edges.back()) return static_cast<std::ptrdiff_t>(nb - 1);
    const auto it = std::upper_bound(edges.begin(), edges.end(), s);
    return static_cast<std::ptrdiff_t>(it - edges.begin()) - 1;
}

}  // namespace

std::vector<double> bin_totals(const FarmSizeDistribution& dist, std::span<const double> bin_edges)
{
    std::vector<double> out(bin_edges.size() > 0 ? bin_edges.size() - 1 : 0, 0.0);
    const auto s = dist.sizes();
    const auto n = dist.counts();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto b = bin_of(bin_edges, s[i]);
        if (b >= 0) out[static_cast<std::size_t>(b)] += n[i];
    }
    return out;
}

FarmSizeDistribution densify(const CoarseBinSpec& coarse, double step)
{
    validate(coarse);
    if (!(step > 0.0)) throw ConfigError("densify step must be positive");

    const auto& edges = coarse.bin_edges;
    const std::size_t nbins = coarse.bin_counts.size();

    std::vector<double> knots;
    for (std::size_t b = 0; b < nbins; ++b) {
        knots.push_back(edges[b]);
        knots.push_back(0.5 * (edges[b] + edges[b + 1]));
    }
    knots.push_back(edges.back());
    const auto nk = static_cast<Eigen::Index>(knots.size());

    std::vector<double> grid;
    const double lo = edges.front(), hi = edges.back();
    for (std::size_t k = 0;; ++k) {
        const double s = lo + static_cast<double>(k) * step;
        if (s > hi + 1e-9 * step) break;
        grid.push_back(std::min(s, hi));
    }

    // basis(k, m) = hat function of knot m evaluated at grid[k]
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid.size()), nk);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = grid[k];
        auto it = std::upper_bound(knots.begin(), knots.end(), s);
        std::size_t m = static_cast<std::size_t>(it - knots.begin());
        if (m >= knots.size()) m = knots.size() - 1;
        if (m == 0) m = 1;
        const double t = (s - knots[m - 1]) / (knots[m] - knots[m - 1]);
        basis(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m - 1)) += 1.0 - t;
        basis(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) += t;
    }

    // Unknowns are knot heights in units of the mean density, so rows are O(1).
    const double farms = coarse.target_total_farms;
    const double height_scale = farms / (hi - lo);
    const double count_scale = step * height_scale;
    const double regularization = 1e-3;

    const Eigen::Index rows = static_cast<Eigen::Index>(nbins) + 1 + (nk - 1);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, nk);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto b = bin_of(edges, grid[k]);
        const double c = coarse.bin_counts[static_cast<std::size_t>(b)];
        const double denom = c > 0.0 ? c : farms / static_cast<double>(nbins);
        A.row(static_cast<Eigen::Index>(b)) += count_scale * basis.row(static_cast<Eigen::Index>(k)) / denom;
        A.row(static_cast<Eigen::Index>(nbins)) +=
            count_scale * grid[k] * basis.row(static_cast<Eigen::Index>(k)) / coarse.target_total_size;
    }
    for (std::size_t b = 0; b < nbins; ++b)
        rhs(static_cast<Eigen::Index>(b)) = coarse.bin_counts[b] > 0.0 ? 1.0 : 0.0;
    rhs(static_cast<Eigen::Index>(nbins)) = 1.0;
    for (Eigen::Index m = 0; m + 1 < nk; ++m) {
        const Eigen::Index r = static_cast<Eigen::Index>(nbins) + 1 + m;
        A(r, m) = -regularization;
        A(r, m + 1) = regularization;
    }

    const Eigen::VectorXd heights = detail::nnls(A, rhs);
    const Eigen::VectorXd counts = count_scale * (basis * heights);

    std::vector<double> n(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) n[k] = std::max(0.0, counts(static_cast<Eigen::Index>(k)));
    FarmSizeDistribution dense(grid, std::move(n), coarse.unit);

    const auto got_bins = bin_totals(dense, edges);
    for (std::size_t b = 0; b < nbins; ++b) {
        const double want = coarse.bin_counts[b];
        const double err = std::abs(got_bins[b] - want) / std::max(want, 1.0);
        if (err > kDensifyBinTolerance)
            throw ReconstructionError("dense reconstruction cannot match bin [" + format_number(edges[b]) + ", " +
                                      format_number(edges[b + 1]) + "): got " + format_number(got_bins[b]) +
                                      " farms, want " + format_number(want));
    }
    const double size_err = std::abs(total_size(dense) - coarse.target_total_size) / coarse.target_total_size;
    if (size_err > kDensifySizeTolerance)
        throw ReconstructionError("dense reconstruction cannot match target_total_size " +
                                  format_number(coarse.target_total_size) + " (best fit " +
                                  format_number(total_size(dense)) + ")");
    return dense;
}

FarmSizeDistribution read_distribution(std::istream& in, SizeUnit unit)
{
    const auto rows = read_delimited(in);
    if (rows.empty()) throw ConfigError("distribution table is empty");
    std::vector<double> s, n;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 2)
            throw ConfigError("distribution table row " + std::to_string(r + 1) + " needs size and count");
        try {
            s.push_back(std::stod(rows[r][0]));
            n.push_back(std::stod(rows[r][1]));
        } catch (const std::logic_error&) {
            throw ConfigError("distribution table row " + std::to_string(r + 1) + " is not numeric");
        }
    }
    return {std::move(s), std::move(n), unit};
}

FarmSizeDistribution read_distribution_file(const std::string& path, SizeUnit unit)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open distribution file " + path);
    try {
        return read_distribution(in, unit);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace agrifoot
