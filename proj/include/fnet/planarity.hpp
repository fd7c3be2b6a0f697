#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fnet/graph.hpp"

namespace fnet {

enum class KuratowskiKind { K5, K33 };

struct PlanarityResult {
    bool planar = false;
    /// When planar: for each vertex, its neighbors in clockwise order.
    std::vector<std::vector<std::size_t>> embedding;
    /// When not planar: edges of a subgraph homeomorphic to K5 or K3,3.
    std::vector<EdgePair> witness;
    std::optional<KuratowskiKind> witness_kind;
};

/// Boyer-Myrvold planarity test with embedding / Kuratowski certificate.
/// Requires a simple graph.
[[nodiscard]] PlanarityResult is_planar(std::span<const EdgePair> edges, std::size_t n);

/// Same test, answer only.
[[nodiscard]] bool planar(std::span<const EdgePair> edges, std::size_t n);

/// Suppresses degree-2 vertices of `witness` and checks that what remains is
/// exactly K5 or K3,3. Returns nullopt if it is neither.
[[nodiscard]] std::optional<KuratowskiKind> classify_kuratowski(std::span<const EdgePair> witness);

/// Checks a rotation system: every edge appears in both rotations and the face
/// count satisfies Euler's formula V - E + F = 1 + C for C components.
[[nodiscard]] bool verify_embedding(std::span<const EdgePair> edges, std::size_t n,
                                    const std::vector<std::vector<std::size_t>>& embedding);

}  // namespace fnet
