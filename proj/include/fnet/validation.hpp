#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fnet/correlation.hpp"
#include "fnet/graph.hpp"
#include "fnet/market_data.hpp"

namespace fnet {

struct BootstrapOptions {
    std::size_t replicas = 1000;
    std::uint64_t seed = 0;
    DissimilarityKind dissimilarity = DissimilarityKind::Power;
    double threshold = 0.95;
    /// Redraws allowed per replica when a resample has a constant series.
    std::size_t max_redraws = 100;
};

struct BootstrapReport {
    FilterKind kind = FilterKind::MST;
    std::size_t replica_count = 0;
    /// Edges of the graph built on the full sample, and the fraction of
    /// replicas whose graph contains each of them.
    std::vector<EdgePair> edges;
    std::vector<double> support;
    double threshold = 0.95;
    double frac_edges_above_threshold = 0.0;
    std::size_t redraws = 0;

    [[nodiscard]] std::optional<double> support_of(EdgePair edge) const;
};

/// Row bootstrap: each replica draws T time indices with replacement and keeps
/// whole cross-sections together, then rebuilds correlation, dissimilarity and
/// the filtered graph. Replica r uses its own RNG stream derived from (seed, r).
[[nodiscard]] BootstrapReport bootstrap_stability(const ReturnPanel& panel, FilterKind kind,
                                                  const BootstrapOptions& options);

/// Supports of an already-built empirical graph (avoids rebuilding it).
[[nodiscard]] BootstrapReport bootstrap_stability(const ReturnPanel& panel,
                                                  const FilteredGraph& empirical,
                                                  const BootstrapOptions& options);

struct NullEnvelope {
    std::size_t shuffle_count = 0;
    double min_coeff = 0.0;
    double max_coeff = 0.0;
    /// Every off-diagonal coefficient of every shuffle, when retained.
    std::optional<std::vector<double>> null_coeff_samples;
};

/// Each repetition permutes every asset's returns in time independently and
/// records the extreme off-diagonal coefficients.
[[nodiscard]] NullEnvelope shuffle_null(const ReturnPanel& panel, std::size_t shuffles,
                                        std::uint64_t seed, bool retain_samples = false);

enum class Stars { None, One, Two, Three };

[[nodiscard]] std::string to_string(Stars stars);
/// p <= 0.001 -> ***, <= 0.01 -> **, <= 0.05 -> *, otherwise none.
[[nodiscard]] Stars stars_for(double p_value) noexcept;

struct SignificanceAnnotation {
    std::size_t links_within_envelope = 0;
    std::size_t total_links = 0;
    double p_value = 0.0;
    Stars stars = Stars::None;
};

/// Counts links strictly inside (min_coeff, max_coeff); p = inside / total.
[[nodiscard]] SignificanceAnnotation annotate_significance(std::span<const double> links,
                                                           const NullEnvelope& envelope);

}  // namespace fnet
