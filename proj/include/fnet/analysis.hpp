#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fnet/correlation.hpp"
#include "fnet/graph.hpp"
#include "fnet/market_data.hpp"
#include "fnet/taxonomy.hpp"

namespace fnet {

/// degree(v) / (n - 1), indexed like graph.symbols.
[[nodiscard]] std::vector<double> degree_centrality(const FilteredGraph& graph);

/// Fraction of nodes outside `group` adjacent to at least one member.
[[nodiscard]] double group_degree_centrality(const FilteredGraph& graph,
                                             std::span<const std::size_t> group);

/// Mean hop count over all unordered node pairs. Throws Disconnected.
[[nodiscard]] double average_shortest_path(const FilteredGraph& graph);

/// Summary of the coefficients carried by the graph's edges.
[[nodiscard]] CorrelationSummary filtered_correlation_summary(
    const FilteredGraph& graph, std::span<const double> percentile_levels);

struct EppsPoint {
    std::int64_t horizon_s = 0;
    CorrelationSummary pairwise;
    /// Sectors with at least two members in the universe.
    std::map<std::string, CorrelationSummary> per_sector;
};

/// Per-horizon pairwise and intra-sector summaries, ascending in horizon.
/// Requires >= 2 horizons over one symbol universe.
[[nodiscard]] std::vector<EppsPoint> epps_curve(
    const std::map<std::int64_t, ReturnPanel>& panels, const SectorTaxonomy& taxonomy,
    std::span<const double> percentile_levels = kDefaultPercentiles);

}  // namespace fnet
