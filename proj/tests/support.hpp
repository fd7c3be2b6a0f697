#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fnet/correlation.hpp"
#include "fnet/graph.hpp"
#include "fnet/market_data.hpp"

namespace fnet::test {

inline std::vector<std::string> names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("A" + std::to_string(i));
    return out;
}

struct Matrices {
    CorrelationMatrix corr;
    DissimilarityMatrix dissim;
};

/// Uniform random power dissimilarities in (0, 1) with matching
/// correlations rho = sqrt(1 - d) (random sign).
inline Matrices random_matrices(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrices m;
    m.corr.symbols = m.dissim.symbols = names(n);
    m.corr.values.assign(n * n, 0.0);
    m.dissim.values.assign(n * n, 0.0);
    m.dissim.kind = DissimilarityKind::Power;
    for (std::size_t i = 0; i < n; ++i) {
        m.corr(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = 0.001 + 0.998 * u(rng);
            const double rho = (u(rng) < 0.2 ? -1.0 : 1.0) * std::sqrt(1.0 - d);
            m.dissim(i, j) = m.dissim(j, i) = d;
            m.corr(i, j) = m.corr(j, i) = rho;
        }
    }
    return m;
}

inline ReturnPanel panel_from_rows(const std::vector<std::vector<double>>& rows) {
    ReturnPanel p;
    p.horizon_s = 15;
    p.t_len = rows.front().size();
    p.symbols = names(rows.size());
    for (const auto& r : rows) p.returns.insert(p.returns.end(), r.begin(), r.end());
    return p;
}

inline ReturnPanel noise_panel(std::size_t n, std::size_t t_len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<std::vector<double>> rows(n, std::vector<double>(t_len));
    for (auto& r : rows) {
        for (auto& v : r) v = z(rng);
    }
    return panel_from_rows(rows);
}

inline double total_dissimilarity(const FilteredGraph& g) {
    double s = 0.0;
    for (const auto& e : g.edges) s += e.dissimilarity;
    return s;
}

inline std::vector<EdgePair> complete_graph(std::size_t n) {
    std::vector<EdgePair> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
    }
    return out;
}

}  // namespace fnet::test
