#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fnet/graph.hpp"

namespace fnet {

struct ChordalityResult {
    bool chordal = false;
    /// Perfect elimination ordering when chordal (reverse maximum-cardinality
    /// search visit order); otherwise the order that failed verification.
    std::vector<std::size_t> elimination_order;
    /// When not chordal: vertices of a chordless cycle of length >= 4, in order.
    std::vector<std::size_t> chordless_cycle;
};

[[nodiscard]] std::vector<std::size_t> maximum_cardinality_search(
    const std::vector<std::vector<std::size_t>>& adjacency);

/// True iff `order` is a perfect elimination ordering of the graph.
[[nodiscard]] bool is_perfect_elimination_ordering(
    const std::vector<std::vector<std::size_t>>& adjacency, std::span<const std::size_t> order);

[[nodiscard]] ChordalityResult is_chordal(std::span<const EdgePair> edges, std::size_t n);

}  // namespace fnet
