#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fnet/market_data.hpp"
#include "fnet/simd/kernels.hpp"
#include "fnet/taxonomy.hpp"

namespace fnet {

/// Symmetric Pearson matrix, row-major, unit diagonal.
struct CorrelationMatrix {
    std::vector<std::string> symbols;
    std::vector<double> values;
    std::size_t t_len = 0;

    [[nodiscard]] std::size_t n() const noexcept { return symbols.size(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return values[i * symbols.size() + j];
    }
    double& operator()(std::size_t i, std::size_t j) { return values[i * symbols.size() + j]; }
};

enum class DissimilarityKind {
    Euclidean,  ///< sqrt(2 (1 - rho))
    Power,      ///< 1 - rho^2
};

[[nodiscard]] const char* to_string(DissimilarityKind kind) noexcept;
/// "euclidean" | "power"; throws ConfigError otherwise.
[[nodiscard]] DissimilarityKind parse_dissimilarity_kind(const std::string& name);

struct DissimilarityMatrix {
    std::vector<std::string> symbols;
    std::vector<double> values;
    DissimilarityKind kind = DissimilarityKind::Power;

    [[nodiscard]] std::size_t n() const noexcept { return symbols.size(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return values[i * symbols.size() + j];
    }
    double& operator()(std::size_t i, std::size_t j) { return values[i * symbols.size() + j]; }
};

struct CorrelationSummary {
    double mean = 0.0;
    double mean_abs = 0.0;
    /// percentile level in (0, 100) -> value
    std::map<double, double> percentiles;
    std::size_t count = 0;
};

/// Estimator with sample means and population-normalized standard deviations, so
/// that rho_ii = 1. Upper triangle is computed and mirrored; entries are clamped
/// to [-1, 1].
[[nodiscard]] CorrelationMatrix pearson_matrix(const ReturnPanel& panel);
[[nodiscard]] CorrelationMatrix pearson_matrix(const ReturnPanel& panel,
                                               const simd::KernelTable& kernels);

[[nodiscard]] double dissimilarity(double rho, DissimilarityKind kind);
[[nodiscard]] DissimilarityMatrix to_dissimilarity(const CorrelationMatrix& corr,
                                                   DissimilarityKind kind);

/// Linear interpolation between order statistics (R type 7). `sorted` must be
/// ascending and non-empty; level in [0, 100].
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double level);

/// Summary over an arbitrary multiset of coefficients. Means are accumulated in
/// sorted order so the result does not depend on input order.
[[nodiscard]] CorrelationSummary summarize(std::vector<double> values,
                                           std::span<const double> percentile_levels);

/// Strict upper-triangle coefficients, row by row.
[[nodiscard]] std::vector<double> off_diagonal(const CorrelationMatrix& corr);

[[nodiscard]] CorrelationSummary pairwise_summary(const CorrelationMatrix& corr,
                                                  std::span<const double> percentile_levels);
[[nodiscard]] CorrelationSummary sector_summary(const CorrelationMatrix& corr,
                                                const SectorTaxonomy& taxonomy,
                                                const std::string& sector,
                                                std::span<const double> percentile_levels);

inline constexpr double kDefaultPercentiles[] = {10.0, 50.0, 90.0};

// CSV: header row of symbols, then n rows of n values.
void write_matrix_csv(std::ostream& out, std::span<const std::string> symbols,
                      std::span<const double> values);

}  // namespace fnet
