#include "fnet/graph.hpp"

#include <algorithm>
#include <cctype>

#include "fnet/error.hpp"

namespace fnet {

const char* to_string(FilterKind kind) noexcept {
    switch (kind) {
        case FilterKind::MST: return "MST";
        case FilterKind::PMFG: return "PMFG";
        case FilterKind::TMFG: return "TMFG";
    }
    return "?";
}

FilterKind parse_filter_kind(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "mst") return FilterKind::MST;
    if (lower == "pmfg") return FilterKind::PMFG;
    if (lower == "tmfg") return FilterKind::TMFG;
    throw Error(ErrorCode::ConfigError, "unknown filter '" + name + "'");
}

std::vector<EdgePair> FilteredGraph::edge_pairs() const {
    std::vector<EdgePair> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(e.key());
    return out;
}

std::vector<EdgePair> FilteredGraph::sorted_edge_pairs() const {
    auto out = edge_pairs();
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::size_t>> FilteredGraph::adjacency() const {
    return adjacency_lists(edge_pairs(), n());
}

std::vector<std::size_t> FilteredGraph::degrees() const {
    std::vector<std::size_t> deg(n(), 0);
    for (const auto& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

std::vector<double> FilteredGraph::edge_correlations() const {
    std::vector<double> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(e.correlation);
    return out;
}

std::vector<std::vector<std::size_t>> adjacency_lists(const std::vector<EdgePair>& edges,
                                                      std::size_t n) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

}  // namespace fnet
