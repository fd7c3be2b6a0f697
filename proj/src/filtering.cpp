#include "fnet/filtering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "fnet/error.hpp"
#include "fnet/planarity.hpp"

namespace fnet {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// false if already joined
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

void check_inputs(const DissimilarityMatrix& dissim, const CorrelationMatrix& corr,
                  std::size_t min_nodes, const char* what) {
    if (dissim.symbols != corr.symbols || dissim.values.size() != corr.values.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": dissimilarity and correlation matrices disagree");
    }
    if (dissim.values.size() != dissim.n() * dissim.n()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": matrix is not n x n");
    }
    if (dissim.n() < min_nodes) {
        throw Error(ErrorCode::TooFewNodes, std::string(what) + " needs at least " +
                                                std::to_string(min_nodes) + " nodes");
    }
}

GraphEdge make_graph_edge(std::size_t a, std::size_t b, const DissimilarityMatrix& dissim,
                          const CorrelationMatrix& corr) {
    const auto [u, v] = make_edge(a, b);
    const double rho = corr(u, v);
    return GraphEdge{u, v, rho, dissim(u, v), rho < 0.0};
}

using Face = std::array<std::size_t, 3>;

Face sorted_face(std::size_t a, std::size_t b, std::size_t c) {
    Face f{a, b, c};
    std::sort(f.begin(), f.end());
    return f;
}

}  // namespace

std::vector<EdgePair> ranked_pairs(const DissimilarityMatrix& dissim) {
    const std::size_t n = dissim.n();
    std::vector<EdgePair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::stable_sort(pairs.begin(), pairs.end(), [&](const EdgePair& a, const EdgePair& b) {
        const double da = dissim(a.first, a.second);
        const double db = dissim(b.first, b.second);
        if (da != db) return da < db;
        return a < b;
    });
    return pairs;
}

FilteredGraph build_mst(const DissimilarityMatrix& dissim, const CorrelationMatrix& corr) {
    check_inputs(dissim, corr, 2, "MST");
    const std::size_t n = dissim.n();
    FilteredGraph graph{FilterKind::MST, dissim.symbols, {}};
    graph.edges.reserve(n - 1);
    DisjointSets sets(n);
    for (const auto& [a, b] : ranked_pairs(dissim)) {
        if (!sets.unite(a, b)) continue;
        graph.edges.push_back(make_graph_edge(a, b, dissim, corr));
        if (graph.edges.size() == n - 1) break;
    }
    return graph;
}

FilteredGraph build_pmfg(const DissimilarityMatrix& dissim, const CorrelationMatrix& corr) {
    check_inputs(dissim, corr, 3, "PMFG");
    const std::size_t n = dissim.n();
    const std::size_t target = 3 * (n - 2);
    FilteredGraph graph{FilterKind::PMFG, dissim.symbols, {}};
    std::vector<EdgePair> accepted;
    accepted.reserve(target);
    for (const auto& pair : ranked_pairs(dissim)) {
        accepted.push_back(pair);
        // Graphs with at most 8 edges are planar (K3,3 has 9, K5 has 10).
        if (accepted.size() > 8 && !planar(accepted, n)) {
            accepted.pop_back();
            continue;
        }
        graph.edges.push_back(make_graph_edge(pair.first, pair.second, dissim, corr));
        if (graph.edges.size() == target) break;
    }
    return graph;
}

FilteredGraph build_tmfg(const DissimilarityMatrix& dissim, const CorrelationMatrix& corr,
                         TmfgTrace* trace) {
    check_inputs(dissim, corr, 4, "TMFG");
    const std::size_t n = dissim.n();
    FilteredGraph graph{FilterKind::TMFG, dissim.symbols, {}};
    graph.edges.reserve(3 * n - 6);

    // Seed: four lowest row sums, ties to the lower index.
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) row_sum[i] += dissim(i, j);
        }
    }
    std::vector<std::size_t> by_sum(n);
    std::iota(by_sum.begin(), by_sum.end(), std::size_t{0});
    std::stable_sort(by_sum.begin(), by_sum.end(),
                     [&](std::size_t a, std::size_t b) { return row_sum[a] < row_sum[b]; });
    std::array<std::size_t, 4> seed{by_sum[0], by_sum[1], by_sum[2], by_sum[3]};
    std::sort(seed.begin(), seed.end());
    if (trace) {
        trace->seed = seed;
        trace->steps.clear();
    }

    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            graph.edges.push_back(make_graph_edge(seed[a], seed[b], dissim, corr));
        }
    }
    std::vector<Face> faces{sorted_face(seed[0], seed[1], seed[2]),
                            sorted_face(seed[0], seed[1], seed[3]),
                            sorted_face(seed[0], seed[2], seed[3]),
                            sorted_face(seed[1], seed[2], seed[3])};
    std::vector<bool> face_alive(faces.size(), true);

    auto face_cost = [&](std::size_t v, const Face& f) {
        return dissim(v, f[0]) + dissim(v, f[1]) + dissim(v, f[2]);
    };
    // Strict weak order on (cost, face corners) for a fixed vertex.
    auto better = [&](double cost_a, std::size_t fa, double cost_b, std::size_t fb) {
        return std::tie(cost_a, faces[fa]) < std::tie(cost_b, faces[fb]);
    };

    std::vector<bool> inserted(n, false);
    for (std::size_t s : seed) inserted[s] = true;

    // Cached best face per outstanding vertex.
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best_face(n, kNone);
    std::vector<double> best_cost(n, std::numeric_limits<double>::infinity());
    auto rescan = [&](std::size_t v) {
        best_face[v] = kNone;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!face_alive[f]) continue;
            const double c = face_cost(v, faces[f]);
            if (best_face[v] == kNone || better(c, f, best_cost[v], best_face[v])) {
                best_face[v] = f;
                best_cost[v] = c;
            }
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (!inserted[v]) rescan(v);
    }

    std::size_t live_faces = 4;
    for (std::size_t step = 4; step < n; ++step) {
        std::size_t chosen = kNone;
        for (std::size_t v = 0; v < n; ++v) {
            if (inserted[v]) continue;
            if (chosen == kNone || best_cost[v] < best_cost[chosen]) chosen = v;
        }
        const std::size_t f = best_face[chosen];
        const Face face = faces[f];
        const double cost = best_cost[chosen];
        inserted[chosen] = true;

        for (std::size_t corner : face) {
            graph.edges.push_back(make_graph_edge(chosen, corner, dissim, corr));
        }
        face_alive[f] = false;
        const std::size_t first_new = faces.size();
        faces.push_back(sorted_face(chosen, face[0], face[1]));
        faces.push_back(sorted_face(chosen, face[0], face[2]));
        faces.push_back(sorted_face(chosen, face[1], face[2]));
        face_alive.insert(face_alive.end(), 3, true);
        live_faces += 2;

        if (trace) {
            trace->steps.push_back(TmfgStep{chosen, face, cost, graph.edges.size(), live_faces});
        }

        for (std::size_t v = 0; v < n; ++v) {
            if (inserted[v]) continue;
            if (best_face[v] == f) {
                rescan(v);
                continue;
            }
            for (std::size_t nf = first_new; nf < faces.size(); ++nf) {
                const double c = face_cost(v, faces[nf]);
                if (better(c, nf, best_cost[v], best_face[v])) {
                    best_face[v] = nf;
                    best_cost[v] = c;
                }
            }
        }
    }
    return graph;
}

FilteredGraph build_filter(FilterKind kind, const DissimilarityMatrix& dissim,
                           const CorrelationMatrix& corr) {
    switch (kind) {
        case FilterKind::MST: return build_mst(dissim, corr);
        case FilterKind::PMFG: return build_pmfg(dissim, corr);
        case FilterKind::TMFG: return build_tmfg(dissim, corr);
    }
    throw Error(ErrorCode::ConfigError, "unknown filter kind");
}

}  // namespace fnet
