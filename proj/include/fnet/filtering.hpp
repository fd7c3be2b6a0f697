#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fnet/correlation.hpp"
#include "fnet/graph.hpp"

namespace fnet {

/// All pairs i < j sorted by ascending dissimilarity; equal values fall back to
/// the lexicographic order of (i, j).
[[nodiscard]] std::vector<EdgePair> ranked_pairs(const DissimilarityMatrix& dissim);

/// Scan ranked_pairs() and keep every edge that does not close a cycle.
[[nodiscard]] FilteredGraph build_mst(const DissimilarityMatrix& dissim,
                                      const CorrelationMatrix& corr);

/// Scan ranked_pairs() and keep every edge that leaves the graph planar, until
/// 3(n - 2) edges are kept.
[[nodiscard]] FilteredGraph build_pmfg(const DissimilarityMatrix& dissim,
                                       const CorrelationMatrix& corr);

struct TmfgStep {
    std::size_t vertex;
    std::array<std::size_t, 3> face;
    double cost;
    std::size_t edges_after;
    std::size_t faces_after;
};

struct TmfgTrace {
    std::array<std::size_t, 4> seed{};
    std::vector<TmfgStep> steps;
};

/// Tetrahedron seeded on the four nodes with the lowest total dissimilarity,
/// then repeated insertion of the (vertex, face) pair with the lowest summed
/// dissimilarity from the vertex to the face corners.
[[nodiscard]] FilteredGraph build_tmfg(const DissimilarityMatrix& dissim,
                                       const CorrelationMatrix& corr, TmfgTrace* trace = nullptr);

[[nodiscard]] FilteredGraph build_filter(FilterKind kind, const DissimilarityMatrix& dissim,
                                         const CorrelationMatrix& corr);

}  // namespace fnet
