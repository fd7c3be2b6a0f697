#include "fnet/chordal.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>

namespace fnet {

namespace {

bool adjacent(const std::vector<std::vector<std::size_t>>& adj, std::size_t a, std::size_t b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

// v - u ... w - v closed through a shortest u-w path that avoids N[v] \ {u, w}.
std::optional<std::vector<std::size_t>> chordless_cycle_through(
    const std::vector<std::vector<std::size_t>>& adj, std::size_t v, std::size_t u,
    std::size_t w) {
    const std::size_t n = adj.size();
    std::vector<bool> blocked(n, false);
    blocked[v] = true;
    for (std::size_t x : adj[v]) blocked[x] = true;
    blocked[u] = false;
    blocked[w] = false;

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(n, kNone);
    std::deque<std::size_t> queue{u};
    parent[u] = u;
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        if (x == w) break;
        for (std::size_t y : adj[x]) {
            if (blocked[y] || parent[y] != kNone) continue;
            // u and w must only be joined through the interior
            if (x == u && y == w) continue;
            parent[y] = x;
            queue.push_back(y);
        }
    }
    if (parent[w] == kNone) return std::nullopt;
    std::vector<std::size_t> cycle{v};
    std::vector<std::size_t> path;
    for (std::size_t x = w; x != u; x = parent[x]) path.push_back(x);
    path.push_back(u);
    std::reverse(path.begin(), path.end());
    cycle.insert(cycle.end(), path.begin(), path.end());
    return cycle;
}

}  // namespace

std::vector<std::size_t> maximum_cardinality_search(
    const std::vector<std::vector<std::size_t>>& adjacency) {
    const std::size_t n = adjacency.size();
    std::vector<std::size_t> weight(n, 0);
    std::vector<bool> numbered(n, false);
    std::vector<std::size_t> order(n);
    for (std::size_t k = n; k-- > 0;) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!numbered[v] && (best == n || weight[v] > weight[best])) best = v;
        }
        numbered[best] = true;
        order[k] = best;
        for (std::size_t w : adjacency[best]) {
            if (!numbered[w]) ++weight[w];
        }
    }
    return order;
}

bool is_perfect_elimination_ordering(const std::vector<std::vector<std::size_t>>& adjacency,
                                     std::span<const std::size_t> order) {
    const std::size_t n = adjacency.size();
    if (order.size() != n) return false;
    std::vector<std::size_t> pos(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (order[k] >= n || pos[order[k]] != n) return false;
        pos[order[k]] = k;
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> later;
        for (std::size_t w : adjacency[v]) {
            if (pos[w] > pos[v]) later.push_back(w);
        }
        if (later.size() < 2) continue;
        const std::size_t u =
            *std::min_element(later.begin(), later.end(),
                              [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
        for (std::size_t w : later) {
            if (w != u && !adjacent(adjacency, u, w)) return false;
        }
    }
    return true;
}

ChordalityResult is_chordal(std::span<const EdgePair> edges, std::size_t n) {
    const auto adj = adjacency_lists({edges.begin(), edges.end()}, n);
    ChordalityResult result;
    result.elimination_order = maximum_cardinality_search(adj);
    result.chordal = is_perfect_elimination_ordering(adj, result.elimination_order);
    if (result.chordal) return result;

    // Try the violating triple found along the ordering first.
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[result.elimination_order[k]] = k;
    for (std::size_t v : result.elimination_order) {
        std::vector<std::size_t> later;
        for (std::size_t w : adj[v]) {
            if (pos[w] > pos[v]) later.push_back(w);
        }
        if (later.size() < 2) continue;
        const std::size_t u =
            *std::min_element(later.begin(), later.end(),
                              [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
        for (std::size_t w : later) {
            if (w == u || adjacent(adj, u, w)) continue;
            if (auto cycle = chordless_cycle_through(adj, v, u, w)) {
                result.chordless_cycle = std::move(*cycle);
                return result;
            }
        }
    }
    // Any chordless cycle passes through some v whose two cycle neighbours are
    // non-adjacent, so the exhaustive scan always finds one.
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t a = 0; a < adj[v].size(); ++a) {
            for (std::size_t b = a + 1; b < adj[v].size(); ++b) {
                const std::size_t u = adj[v][a];
                const std::size_t w = adj[v][b];
                if (adjacent(adj, u, w)) continue;
                if (auto cycle = chordless_cycle_through(adj, v, u, w)) {
                    result.chordless_cycle = std::move(*cycle);
                    return result;
                }
            }
        }
    }
    return result;
}

}  // namespace fnet
