#include "fnet/validation.hpp"

#include <algorithm>
#include <limits>

#include "fnet/error.hpp"
#include "fnet/filtering.hpp"
#include "fnet/parallel.hpp"
#include "fnet/rng.hpp"

namespace fnet {

std::optional<double> BootstrapReport::support_of(EdgePair edge) const {
    edge = make_edge(edge.first, edge.second);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k] == edge) return support[k];
    }
    return std::nullopt;
}

BootstrapReport bootstrap_stability(const ReturnPanel& panel, FilterKind kind,
                                    const BootstrapOptions& options) {
    panel.validate();
    const auto corr = pearson_matrix(panel);
    const auto graph = build_filter(kind, to_dissimilarity(corr, options.dissimilarity), corr);
    return bootstrap_stability(panel, graph, options);
}

BootstrapReport bootstrap_stability(const ReturnPanel& panel, const FilteredGraph& empirical,
                                    const BootstrapOptions& options) {
    if (options.replicas < 1) throw Error(ErrorCode::InvalidSpec, "bootstrap needs >= 1 replica");
    panel.validate();
    const std::size_t n = panel.n();
    const std::size_t t_len = panel.t_len;

    BootstrapReport report;
    report.kind = empirical.kind;
    report.replica_count = options.replicas;
    report.threshold = options.threshold;
    report.edges = empirical.edge_pairs();
    const std::size_t m = report.edges.size();

    // hits[r * m + k] = 1 when replica r contains empirical edge k
    std::vector<unsigned char> hits(options.replicas * m, 0);
    std::vector<std::size_t> redraws(options.replicas, 0);

    parallel_for(options.replicas, [&](std::size_t r) {
        auto rng = make_stream(options.seed, stream_domain::kBootstrap, r);
        std::uniform_int_distribution<std::size_t> pick(0, t_len - 1);
        ReturnPanel replica;
        replica.horizon_s = panel.horizon_s;
        replica.symbols = panel.symbols;
        replica.t_len = t_len;
        replica.returns.resize(n * t_len);
        std::vector<std::size_t> rows(t_len);

        for (std::size_t attempt = 0;; ++attempt) {
            for (auto& idx : rows) idx = pick(rng);
            for (std::size_t i = 0; i < n; ++i) {
                const auto src = panel.row(i);
                auto dst = replica.row(i);
                for (std::size_t t = 0; t < t_len; ++t) dst[t] = src[rows[t]];
            }
            try {
                const auto corr = pearson_matrix(replica);
                const auto graph = build_filter(
                    empirical.kind, to_dissimilarity(corr, options.dissimilarity), corr);
                auto present = graph.sorted_edge_pairs();
                for (std::size_t k = 0; k < m; ++k) {
                    if (std::binary_search(present.begin(), present.end(), report.edges[k])) {
                        hits[r * m + k] = 1;
                    }
                }
                redraws[r] = attempt;
                return;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ZeroVariance) throw;
                if (attempt + 1 >= options.max_redraws) {
                    throw Error(ErrorCode::DegenerateReplica,
                                "replica " + std::to_string(r) + " stayed degenerate after " +
                                    std::to_string(options.max_redraws) + " draws");
                }
            }
        }
    });

    report.support.assign(m, 0.0);
    std::size_t above = 0;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t count = 0;
        for (std::size_t r = 0; r < options.replicas; ++r) count += hits[r * m + k];
        report.support[k] =
            static_cast<double>(count) / static_cast<double>(options.replicas);
        if (report.support[k] > options.threshold) ++above;
    }
    for (std::size_t d : redraws) report.redraws += d;
    report.frac_edges_above_threshold =
        m == 0 ? 0.0 : static_cast<double>(above) / static_cast<double>(m);
    return report;
}

NullEnvelope shuffle_null(const ReturnPanel& panel, std::size_t shuffles, std::uint64_t seed,
                          bool retain_samples) {
    if (shuffles < 1) throw Error(ErrorCode::InvalidSpec, "shuffle_null needs >= 1 shuffle");
    panel.validate();
    if (panel.n() < 2) throw Error(ErrorCode::TooFewNodes, "shuffle_null needs >= 2 assets");

    const std::size_t pairs = panel.n() * (panel.n() - 1) / 2;
    std::vector<double> samples(shuffles * pairs);
    parallel_for(shuffles, [&](std::size_t s) {
        auto rng = make_stream(seed, stream_domain::kShuffle, s);
        ReturnPanel shuffled = panel;
        for (std::size_t i = 0; i < shuffled.n(); ++i) {
            auto row = shuffled.row(i);
            std::shuffle(row.begin(), row.end(), rng);
        }
        const auto coeffs = off_diagonal(pearson_matrix(shuffled));
        std::copy(coeffs.begin(), coeffs.end(), samples.begin() + static_cast<std::ptrdiff_t>(s * pairs));
    });

    NullEnvelope envelope;
    envelope.shuffle_count = shuffles;
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    envelope.min_coeff = *lo;
    envelope.max_coeff = *hi;
    if (retain_samples) envelope.null_coeff_samples = std::move(samples);
    return envelope;
}

std::string to_string(Stars stars) {
    switch (stars) {
        case Stars::None: return "";
        case Stars::One: return "*";
        case Stars::Two: return "**";
        case Stars::Three: return "***";
    }
    return "";
}

Stars stars_for(double p_value) noexcept {
    if (p_value <= 0.001) return Stars::Three;
    if (p_value <= 0.01) return Stars::Two;
    if (p_value <= 0.05) return Stars::One;
    return Stars::None;
}

SignificanceAnnotation annotate_significance(std::span<const double> links,
                                             const NullEnvelope& envelope) {
    if (links.empty()) throw Error(ErrorCode::EmptyLinkList, "no links to annotate");
    SignificanceAnnotation out;
    out.total_links = links.size();
    for (double rho : links) {
        if (rho > envelope.min_coeff && rho < envelope.max_coeff) ++out.links_within_envelope;
    }
    out.p_value = static_cast<double>(out.links_within_envelope) /
                  static_cast<double>(out.total_links);
    out.stars = stars_for(out.p_value);
    return out;
}

}  // namespace fnet
