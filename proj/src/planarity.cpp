#include "fnet/planarity.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <map>
#include <set>

namespace fnet {

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph make_graph(std::span<const EdgePair> edges, std::size_t n) {
    BoostGraph g(n);
    int index = 0;
    for (const auto& [a, b] : edges) {
        auto [e, inserted] = boost::add_edge(a, b, g);
        (void)inserted;
        boost::put(boost::edge_index, g, e, index++);
    }
    return g;
}

}  // namespace

bool planar(std::span<const EdgePair> edges, std::size_t n) {
    // Euler bound rejects dense graphs without running the test.
    if (n >= 3 && edges.size() > 3 * n - 6) return false;
    BoostGraph g = make_graph(edges, n);
    return boost::boyer_myrvold_planarity_test(g);
}

PlanarityResult is_planar(std::span<const EdgePair> edges, std::size_t n) {
    PlanarityResult result;
    BoostGraph g = make_graph(edges, n);

    std::vector<std::vector<BoostEdge>> rotation(n);
    result.planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = g,
        boost::boyer_myrvold_params::embedding = boost::make_iterator_property_map(
            rotation.begin(), boost::get(boost::vertex_index, g)));

    if (result.planar) {
        result.embedding.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            for (const auto& e : rotation[v]) {
                const std::size_t s = boost::source(e, g);
                const std::size_t t = boost::target(e, g);
                result.embedding[v].push_back(s == v ? t : s);
            }
        }
        return result;
    }

    std::vector<BoostEdge> kuratowski;
    boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                        boost::boyer_myrvold_params::kuratowski_subgraph =
                                            std::back_inserter(kuratowski));
    for (const auto& e : kuratowski) {
        result.witness.push_back(make_edge(boost::source(e, g), boost::target(e, g)));
    }
    std::sort(result.witness.begin(), result.witness.end());
    // Boost can return a few extra edges; drop every edge the obstruction does not need.
    for (std::size_t k = result.witness.size(); k-- > 0;) {
        std::vector<EdgePair> trial = result.witness;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
        if (!planar(trial, n)) result.witness = std::move(trial);
    }
    result.witness_kind = classify_kuratowski(result.witness);
    return result;
}

std::optional<KuratowskiKind> classify_kuratowski(std::span<const EdgePair> witness) {
    std::map<std::size_t, std::vector<std::size_t>> adj;
    std::set<EdgePair> unique;
    for (const auto& [a, b] : witness) {
        if (a == b || !unique.insert(make_edge(a, b)).second) return std::nullopt;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::size_t> branch;
    for (const auto& [v, nb] : adj) {
        if (nb.size() == 1) return std::nullopt;
        if (nb.size() != 2) branch.push_back(v);
    }

    // Walk every branch-to-branch path through degree-2 vertices.
    std::set<EdgePair> contracted;
    std::size_t walked = 0;
    for (std::size_t start : branch) {
        for (std::size_t first : adj[start]) {
            std::size_t prev = start;
            std::size_t cur = first;
            ++walked;
            while (adj[cur].size() == 2) {
                const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = next;
                ++walked;
            }
            if (cur == start) return std::nullopt;
            if (start < cur && !contracted.insert({start, cur}).second) return std::nullopt;
        }
    }
    // every edge is walked from both ends
    if (walked != 2 * unique.size()) return std::nullopt;

    if (branch.size() == 5 && contracted.size() == 10) {
        for (std::size_t v : branch) {
            if (adj[v].size() != 4) return std::nullopt;
        }
        return KuratowskiKind::K5;
    }
    if (branch.size() == 6 && contracted.size() == 9) {
        for (std::size_t v : branch) {
            if (adj[v].size() != 3) return std::nullopt;
        }
        // two-color the contracted graph
        std::map<std::size_t, int> color;
        color[branch[0]] = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [a, b] : contracted) {
                const bool ha = color.count(a) != 0;
                const bool hb = color.count(b) != 0;
                if (ha && hb && color[a] == color[b]) return std::nullopt;
                if (ha && !hb) { color[b] = 1 - color[a]; changed = true; }
                if (hb && !ha) { color[a] = 1 - color[b]; changed = true; }
            }
        }
        if (color.size() != 6) return std::nullopt;
        std::size_t side0 = 0;
        for (const auto& [v, c] : color) side0 += c == 0 ? 1 : 0;
        if (side0 != 3) return std::nullopt;
        return KuratowskiKind::K33;
    }
    return std::nullopt;
}

bool verify_embedding(std::span<const EdgePair> edges, std::size_t n,
                      const std::vector<std::vector<std::size_t>>& embedding) {
    if (embedding.size() != n) return false;
    // position of each neighbor inside each rotation
    std::vector<std::map<std::size_t, std::size_t>> pos(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t k = 0; k < embedding[v].size(); ++k) {
            if (!pos[v].emplace(embedding[v][k], k).second) return false;
        }
    }
    std::set<EdgePair> edge_set;
    for (const auto& [a, b] : edges) edge_set.insert(make_edge(a, b));
    std::size_t rotation_entries = 0;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w : embedding[v]) {
            if (w >= n || !edge_set.count(make_edge(v, w))) return false;
            if (!pos[w].count(v)) return false;
            ++rotation_entries;
        }
    }
    if (rotation_entries != 2 * edge_set.size()) return false;

    // trace faces over darts
    std::set<std::pair<std::size_t, std::size_t>> visited;
    std::size_t faces = 0;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w : embedding[v]) {
            if (visited.count({v, w})) continue;
            ++faces;
            std::size_t a = v, b = w;
            while (visited.insert({a, b}).second) {
                const auto& rot = embedding[b];
                const std::size_t k = pos[b].at(a);
                const std::size_t c = rot[(k + 1) % rot.size()];
                a = b;
                b = c;
            }
        }
    }

    // components that carry at least one edge
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : edge_set) parent[find(a)] = find(b);
    std::set<std::size_t> roots;
    std::size_t isolated = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (embedding[v].empty()) {
            ++isolated;
        } else {
            roots.insert(find(v));
        }
    }
    const auto lhs = static_cast<long long>(n - isolated) - static_cast<long long>(edge_set.size()) +
                     static_cast<long long>(faces);
    return lhs == 2 * static_cast<long long>(roots.size());
}

}  // namespace fnet
