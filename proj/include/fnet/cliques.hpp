#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fnet/graph.hpp"

namespace fnet {

struct CliqueReport {
    /// Distinct triangles, each sorted ascending, listed lexicographically.
    std::vector<std::array<std::size_t, 3>> three_cliques;
    std::vector<std::array<std::size_t, 4>> four_cliques;

    /// Triangles counted once per containing 4-clique (4 per 4-clique).
    [[nodiscard]] std::size_t triangles_in_four_cliques() const noexcept {
        return 4 * four_cliques.size();
    }
};

[[nodiscard]] CliqueReport enumerate_cliques(const FilteredGraph& graph);
[[nodiscard]] CliqueReport enumerate_cliques(const std::vector<EdgePair>& edges, std::size_t n);

}  // namespace fnet
