#include "fnet/cliques.hpp"

#include <algorithm>

namespace fnet {

CliqueReport enumerate_cliques(const FilteredGraph& graph) {
    return enumerate_cliques(graph.edge_pairs(), graph.n());
}

CliqueReport enumerate_cliques(const std::vector<EdgePair>& edges, std::size_t n) {
    const auto adj = adjacency_lists(edges, n);
    auto linked = [&](std::size_t a, std::size_t b) {
        return std::binary_search(adj[a].begin(), adj[a].end(), b);
    };
    CliqueReport report;
    // Extend only towards larger indices so each clique appears once, sorted.
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b : adj[a]) {
            if (b <= a) continue;
            for (std::size_t c : adj[b]) {
                if (c <= b || !linked(a, c)) continue;
                report.three_cliques.push_back({a, b, c});
                for (std::size_t d : adj[c]) {
                    if (d <= c || !linked(a, d) || !linked(b, d)) continue;
                    report.four_cliques.push_back({a, b, c, d});
                }
            }
        }
    }
    return report;
}

}  // namespace fnet
