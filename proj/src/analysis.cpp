#include "fnet/analysis.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "fnet/error.hpp"

namespace fnet {

std::vector<double> degree_centrality(const FilteredGraph& graph) {
    const std::size_t n = graph.n();
    if (n < 2) throw Error(ErrorCode::TooFewNodes, "degree centrality needs n >= 2");
    const auto deg = graph.degrees();
    std::vector<double> out(n);
    for (std::size_t v = 0; v < n; ++v) {
        out[v] = static_cast<double>(deg[v]) / static_cast<double>(n - 1);
    }
    return out;
}

double group_degree_centrality(const FilteredGraph& graph, std::span<const std::size_t> group) {
    if (group.empty()) throw Error(ErrorCode::EmptyGroup, "group is empty");
    const std::size_t n = graph.n();
    std::vector<bool> member(n, false);
    for (std::size_t v : group) {
        if (v >= n) throw Error(ErrorCode::DimensionMismatch, "group member out of range");
        member[v] = true;
    }
    const auto members = static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
    if (members == n) {
        throw Error(ErrorCode::GroupIsEntireGraph, "group covers every node");
    }
    std::vector<bool> reached(n, false);
    for (const auto& e : graph.edges) {
        if (member[e.u] && !member[e.v]) reached[e.v] = true;
        if (member[e.v] && !member[e.u]) reached[e.u] = true;
    }
    const auto hit = static_cast<std::size_t>(std::count(reached.begin(), reached.end(), true));
    return static_cast<double>(hit) / static_cast<double>(n - members);
}

double average_shortest_path(const FilteredGraph& graph) {
    const std::size_t n = graph.n();
    if (n < 2) throw Error(ErrorCode::TooFewNodes, "average shortest path needs n >= 2");
    const auto adj = graph.adjacency();
    std::uint64_t total = 0;
    std::vector<std::size_t> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), n);
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        std::size_t seen = 1;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t y : adj[x]) {
                if (dist[y] != n) continue;
                dist[y] = dist[x] + 1;
                ++seen;
                queue.push_back(y);
            }
        }
        if (seen != n) throw Error(ErrorCode::Disconnected, "graph is not connected");
        for (std::size_t t = s + 1; t < n; ++t) total += dist[t];
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(total) / pairs;
}

CorrelationSummary filtered_correlation_summary(const FilteredGraph& graph,
                                                std::span<const double> percentile_levels) {
    if (graph.edges.empty()) throw Error(ErrorCode::EdgelessGraph, "graph has no edges");
    return summarize(graph.edge_correlations(), percentile_levels);
}

std::vector<EppsPoint> epps_curve(const std::map<std::int64_t, ReturnPanel>& panels,
                                  const SectorTaxonomy& taxonomy,
                                  std::span<const double> percentile_levels) {
    if (panels.size() < 2) {
        throw Error(ErrorCode::InsufficientSamples, "Epps curve needs at least two horizons");
    }
    const auto& reference = panels.begin()->second.symbols;
    const std::set<std::string> universe(reference.begin(), reference.end());
    for (const auto& [h, panel] : panels) {
        if (std::set<std::string>(panel.symbols.begin(), panel.symbols.end()) != universe ||
            panel.symbols.size() != reference.size()) {
            throw Error(ErrorCode::InconsistentUniverse,
                        "horizon " + std::to_string(h) + " has a different symbol set");
        }
    }

    std::vector<EppsPoint> curve;
    for (const auto& [h, panel] : panels) {
        const auto corr = pearson_matrix(panel);
        EppsPoint point;
        point.horizon_s = h;
        point.pairwise = pairwise_summary(corr, percentile_levels);
        for (const auto& sector : taxonomy.sectors()) {
            if (taxonomy.member_indices(sector, corr.symbols).size() < 2) continue;
            point.per_sector[sector] = sector_summary(corr, taxonomy, sector, percentile_levels);
        }
        curve.push_back(std::move(point));
    }
    return curve;
}

}  // namespace fnet
