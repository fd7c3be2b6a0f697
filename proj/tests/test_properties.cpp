// Randomised properties. Each case draws its inputs from a seeded generator;
// a failing check reports the case seed through INFO.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fnet/analysis.hpp"
#include "fnet/chordal.hpp"
#include "fnet/filtering.hpp"
#include "fnet/market_data.hpp"
#include "fnet/planarity.hpp"
#include "fnet/synth.hpp"
#include "fnet/validation.hpp"
#include "support.hpp"

using namespace fnet;
using Catch::Approx;

namespace {

template <typename Fn>
void for_all(std::size_t cases, std::uint64_t base_seed, Fn&& fn) {
    for (std::size_t k = 0; k < cases; ++k) {
        const std::uint64_t seed = base_seed * 1000003u + k;
        INFO("case seed " << seed);
        std::mt19937_64 rng(seed);
        fn(rng);
    }
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

BarSeries random_walk_bars(std::mt19937_64& rng, std::size_t count, std::int64_t h) {
    std::normal_distribution<double> z(0.0, 0.01);
    std::uniform_real_distribution<double> u(0.0, 0.005);
    BarSeries s{"X", h, {}};
    double p = 100.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double c = p * std::exp(z(rng));
        s.bars.push_back(OhlcvBar{static_cast<Timestamp>(1609459200 + k * h), p, std::max(p, c) * (1 + u(rng)),
                                  std::min(p, c) * (1 - u(rng)), c, std::floor(u(rng) * 1e5) / 7.0});
        p = c;
    }
    return s;
}

std::vector<std::size_t> permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

test::Matrices permuted(const test::Matrices& m, const std::vector<std::size_t>& perm) {
    // New node perm[i] is old node i.
    const std::size_t n = m.corr.n();
    test::Matrices out = m;
    for (std::size_t i = 0; i < n; ++i) {
        out.corr.symbols[perm[i]] = m.corr.symbols[i];
        for (std::size_t j = 0; j < n; ++j) {
            out.corr(perm[i], perm[j]) = m.corr(i, j);
            out.dissim(perm[i], perm[j]) = m.dissim(i, j);
        }
    }
    out.dissim.symbols = out.corr.symbols;
    return out;
}

}  // namespace

TEST_CASE("resampling composes") {
    for_all(30, 1, [](auto& rng) {
        const auto s = random_walk_bars(rng, uniform(rng, 20, 300), 15);
        const auto twice = resample(resample(s, 60), 240);
        const auto once = resample(s, 240);
        REQUIRE(twice.bars.size() == once.bars.size());
        for (std::size_t k = 0; k < once.bars.size(); ++k) {
            const auto& a = twice.bars[k];
            const auto& b = once.bars[k];
            CHECK(a.timestamp == b.timestamp);
            CHECK(a.open == b.open);
            CHECK(a.high == b.high);
            CHECK(a.low == b.low);
            CHECK(a.close == b.close);
            // summation order differs
            CHECK(a.volume == Catch::Approx(b.volume).epsilon(1e-12));
        }
    });
}

TEST_CASE("log returns ignore price scale") {
    for_all(30, 2, [](auto& rng) {
        const auto s = random_walk_bars(rng, uniform(rng, 2, 100), 15);
        auto closes = s.closes();
        const double k = std::uniform_real_distribution<double>(0.01, 100.0)(rng);
        auto scaled = closes;
        for (auto& c : scaled) c *= k;
        const auto a = log_returns(closes), b = log_returns(scaled);
        for (std::size_t t = 0; t < a.size(); ++t) CHECK(b[t] == Approx(a[t]).margin(1e-12));
    });
}

TEST_CASE("gap filling is idempotent and complete") {
    for_all(30, 3, [](auto& rng) {
        auto s = random_walk_bars(rng, uniform(rng, 3, 200), 15);
        std::vector<OhlcvBar> kept{s.bars.front()};
        for (std::size_t k = 1; k + 1 < s.bars.size(); ++k) {
            if (std::bernoulli_distribution(0.7)(rng)) kept.push_back(s.bars[k]);
        }
        kept.push_back(s.bars.back());
        s.bars = kept;
        const auto once = fill_gaps(s);
        const auto twice = fill_gaps(once.series);
        CHECK(once.series.contiguous());
        CHECK(twice.filled == 0);
        CHECK(twice.series.bars == once.series.bars);
    });
}

TEST_CASE("csv round trip is exact") {
    for_all(20, 4, [](auto& rng) {
        const auto s = random_walk_bars(rng, uniform(rng, 1, 100), 60);
        std::ostringstream out;
        write_ohlcv(out, s);
        std::istringstream in(out.str());
        CHECK(parse_ohlcv(in, "X", 60).bars == s.bars);
    });
}

TEST_CASE("pearson is affine invariant") {
    for_all(20, 5, [](auto& rng) {
        const std::size_t n = uniform(rng, 2, 8);
        auto panel = test::noise_panel(n, uniform(rng, 5, 200), rng());
        const auto before = pearson_matrix(panel);
        const double a = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
        const double b = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
        const double sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
        for (auto& v : panel.row(0)) v = sign * a * v + b;
        const auto after = pearson_matrix(panel);
        for (std::size_t j = 1; j < n; ++j) CHECK(after(0, j) == Approx(sign * before(0, j)).margin(1e-12));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(after(i, i) == 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(after(i, j) == after(j, i));
                CHECK(std::abs(after(i, j)) <= 1.0);
            }
        }
    });
}

TEST_CASE("dissimilarity is monotone") {
    for_all(200, 6, [](auto& rng) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const double r1 = u(rng), r2 = u(rng);
        if (std::abs(r1) > std::abs(r2)) {
            CHECK(dissimilarity(r1, DissimilarityKind::Power) < dissimilarity(r2, DissimilarityKind::Power));
        }
        if (r1 > r2) {
            CHECK(dissimilarity(r1, DissimilarityKind::Euclidean) < dissimilarity(r2, DissimilarityKind::Euclidean));
        }
        const double e = dissimilarity(r1, DissimilarityKind::Euclidean);
        CHECK((e >= 0.0 && e <= 2.0));
    });
}

TEST_CASE("summaries ignore asset order and have ordered percentiles") {
    for_all(20, 7, [](auto& rng) {
        const std::size_t n = uniform(rng, 3, 12);
        const auto panel = test::noise_panel(n, 60, rng());
        const auto c = pearson_matrix(panel);
        const std::vector<double> levels{5, 25, 50, 75, 95};
        const auto s = pairwise_summary(c, levels);
        test::Matrices m{c, to_dissimilarity(c, DissimilarityKind::Power)};
        const auto p = permuted(m, permutation(rng, n));
        const auto s2 = pairwise_summary(p.corr, levels);
        CHECK(s.mean == s2.mean);
        CHECK(s.mean_abs == s2.mean_abs);
        CHECK(s.percentiles == s2.percentiles);
        double prev = -2.0;
        for (const auto& [lvl, v] : s.percentiles) {
            CHECK(v >= prev);
            prev = v;
        }
    });
}

TEST_CASE("mst depends only on the ranking of dissimilarities") {
    for_all(30, 8, [](auto& rng) {
        const auto m = test::random_matrices(uniform(rng, 2, 30), rng());
        auto t = m;
        for (auto& v : t.dissim.values) v = std::exp(3.0 * v) - 1.0;
        CHECK(build_mst(m.dissim, m.corr).edge_pairs() == build_mst(t.dissim, t.corr).edge_pairs());
    });
}

TEST_CASE("filters commute with relabelling") {
    for_all(15, 9, [](auto& rng) {
        const std::size_t n = uniform(rng, 4, 20);
        const auto m = test::random_matrices(n, rng());
        const auto perm = permutation(rng, n);
        const auto p = permuted(m, perm);
        for (auto kind : {FilterKind::MST, FilterKind::PMFG, FilterKind::TMFG}) {
            auto expect = build_filter(kind, m.dissim, m.corr).edge_pairs();
            for (auto& e : expect) e = make_edge(perm[e.first], perm[e.second]);
            std::sort(expect.begin(), expect.end());
            CHECK(build_filter(kind, p.dissim, p.corr).sorted_edge_pairs() == expect);
        }
    });
}

TEST_CASE("structural invariants of every filter") {
    for_all(25, 10, [](auto& rng) {
        const std::size_t n = uniform(rng, 4, 35);
        const auto m = test::random_matrices(n, rng());
        const auto mst = build_mst(m.dissim, m.corr);
        const auto pmfg = build_pmfg(m.dissim, m.corr);
        const auto tmfg = build_tmfg(m.dissim, m.corr);
        const auto a = mst.sorted_edge_pairs(), b = pmfg.sorted_edge_pairs();
        CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        CHECK(planar(pmfg.edge_pairs(), n));
        CHECK(planar(tmfg.edge_pairs(), n));
        CHECK(is_chordal(tmfg.edge_pairs(), n).chordal);
        for (const auto* g : {&mst, &pmfg, &tmfg}) {
            const auto deg = g->degrees();
            CHECK(std::accumulate(deg.begin(), deg.end(), std::size_t{0}) == 2 * g->edges.size());
            for (double c : degree_centrality(*g)) CHECK((c >= 0.0 && c <= 1.0));
        }
        CHECK(average_shortest_path(mst) >= average_shortest_path(tmfg));
        CHECK(average_shortest_path(tmfg) >= 1.0);
        CHECK(build_tmfg(m.dissim, m.corr).edge_pairs() == tmfg.edge_pairs());
    });
}

TEST_CASE("perfectly correlated pairs stay outside the shuffle envelope") {
    for_all(10, 11, [](auto& rng) {
        const std::size_t t = uniform(rng, 30, 300);
        auto base = test::noise_panel(1, t, rng());
        std::vector<double> x(base.row(0).begin(), base.row(0).end()), y = x;
        const double sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
        for (auto& v : y) v *= sign;
        const auto panel = test::panel_from_rows({x, y});
        const auto env = shuffle_null(panel, 20, rng());
        const std::vector<double> link{sign};
        CHECK(annotate_significance(link, env).links_within_envelope == 0);
    });
}

TEST_CASE("epps curve ignores asset order") {
    AsyncModelSpec spec;
    spec.n_assets = 5;
    spec.latent_corr = 0.4;
    spec.update_probability = 0.3;
    spec.base_tick_s = 5;
    spec.t_len_ticks = 720 * 40;
    spec.seed = 3;
    const std::vector<std::int64_t> h{15, 60, 300};
    const auto panels = gen_async_panel(spec, h);
    SectorTaxonomy tax;
    for (const auto& s : panels.at(15).symbols) tax.add(s, s <= "S001" ? "x" : "y");
    for_all(5, 12, [&](auto& rng) {
        const auto perm = permutation(rng, spec.n_assets);
        std::map<std::int64_t, ReturnPanel> shuffled;
        for (const auto& [hz, p] : panels) {
            ReturnPanel q = p;
            for (std::size_t i = 0; i < p.n(); ++i) {
                q.symbols[perm[i]] = p.symbols[i];
                std::copy(p.row(i).begin(), p.row(i).end(), q.row(perm[i]).begin());
            }
            shuffled[hz] = q;
        }
        const auto a = epps_curve(panels, tax), b = epps_curve(shuffled, tax);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].pairwise.mean == b[k].pairwise.mean);
            CHECK(a[k].pairwise.percentiles == b[k].pairwise.percentiles);
            CHECK(a[k].per_sector.at("y").mean == b[k].per_sector.at("y").mean);
        }
    });
}
