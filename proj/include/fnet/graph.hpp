#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace fnet {

enum class FilterKind { MST, PMFG, TMFG };

[[nodiscard]] const char* to_string(FilterKind kind) noexcept;
/// Case-insensitive "mst" | "pmfg" | "tmfg"; throws ConfigError otherwise.
[[nodiscard]] FilterKind parse_filter_kind(const std::string& name);

/// Undirected edge between node indices, normalized so that first < second.
using EdgePair = std::pair<std::size_t, std::size_t>;

[[nodiscard]] inline EdgePair make_edge(std::size_t a, std::size_t b) noexcept {
    return a < b ? EdgePair{a, b} : EdgePair{b, a};
}

struct GraphEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    double correlation = 0.0;
    double dissimilarity = 0.0;
    bool negative = false;

    [[nodiscard]] EdgePair key() const noexcept { return make_edge(u, v); }
};

struct FilteredGraph {
    FilterKind kind = FilterKind::MST;
    std::vector<std::string> symbols;
    /// In acceptance order.
    std::vector<GraphEdge> edges;

    [[nodiscard]] std::size_t n() const noexcept { return symbols.size(); }
    [[nodiscard]] std::vector<EdgePair> edge_pairs() const;
    /// Sorted, for set comparisons.
    [[nodiscard]] std::vector<EdgePair> sorted_edge_pairs() const;
    [[nodiscard]] std::vector<std::vector<std::size_t>> adjacency() const;
    [[nodiscard]] std::vector<std::size_t> degrees() const;
    [[nodiscard]] std::vector<double> edge_correlations() const;
};

/// Adjacency lists (sorted) of a simple graph given by its edges.
[[nodiscard]] std::vector<std::vector<std::size_t>> adjacency_lists(
    const std::vector<EdgePair>& edges, std::size_t n);

}  // namespace fnet
