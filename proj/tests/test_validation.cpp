#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fnet/error.hpp"
#include "fnet/filtering.hpp"
#include "fnet/synth.hpp"
#include "fnet/validation.hpp"
#include "support.hpp"

using namespace fnet;
using Catch::Approx;

namespace {

bool has(ErrorCode c, const Error& e) { return e.code() == c; }

ReturnPanel duplicated_blocks(std::size_t t_len) {
    // Rows 0-2 copy one series, rows 3-5 copy another.
    std::mt19937_64 rng(4);
    std::normal_distribution<double> z;
    std::vector<double> a(t_len), b(t_len);
    for (auto& v : a) v = z(rng);
    for (auto& v : b) v = z(rng);
    return test::panel_from_rows({a, a, a, b, b, b});
}

}  // namespace

TEST_CASE("stars follow the thresholds") {
    CHECK(stars_for(0.0005) == Stars::Three);
    CHECK(stars_for(0.001) == Stars::Three);
    CHECK(stars_for(0.005) == Stars::Two);
    CHECK(stars_for(0.01) == Stars::Two);
    CHECK(stars_for(0.05) == Stars::One);
    CHECK(stars_for(0.5) == Stars::None);
    CHECK(to_string(Stars::Three) == "***");
    CHECK(to_string(Stars::None).empty());
}

TEST_CASE("significance counts the strict interior") {
    NullEnvelope env{10, -0.1, 0.1, std::nullopt};
    const std::vector<double> outside{0.5, -0.5, 0.1, -0.1};
    const auto a = annotate_significance(outside, env);
    CHECK(a.links_within_envelope == 0);
    CHECK(a.p_value == 0.0);
    CHECK(a.stars == Stars::Three);

    const std::vector<double> inside{0.0, 0.05, -0.09};
    const auto b = annotate_significance(inside, env);
    CHECK(b.links_within_envelope == 3);
    CHECK(b.p_value == 1.0);
    CHECK(b.stars == Stars::None);

    const std::vector<double> none;
    CHECK_THROWS_MATCHES(annotate_significance(none, env), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return has(ErrorCode::EmptyLinkList, e); }));
}

TEST_CASE("shuffle null") {
    const auto pair = test::noise_panel(2, 50, 3);
    const auto one = shuffle_null(pair, 1, 9, true);
    CHECK(one.min_coeff == one.max_coeff);
    REQUIRE(one.null_coeff_samples.has_value());
    CHECK(one.null_coeff_samples->size() == 1);

    const auto noise = test::noise_panel(6, 10000, 8);
    const auto env = shuffle_null(noise, 20, 1);
    CHECK(env.min_coeff <= env.max_coeff);
    CHECK(env.max_coeff < 4.0 / std::sqrt(10000.0));
    CHECK(env.min_coeff > -4.0 / std::sqrt(10000.0));

    std::vector<double> x(1000);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> z;
    for (auto& v : x) v = z(rng);
    const auto perfect = test::panel_from_rows({x, x});
    const auto e2 = shuffle_null(perfect, 50, 4);
    CHECK(e2.max_coeff < 0.5);

    const auto again = shuffle_null(noise, 20, 1);
    CHECK(again.min_coeff == env.min_coeff);
    CHECK(again.max_coeff == env.max_coeff);
}

TEST_CASE("bootstrap on rank-identical blocks gives full support") {
    const auto panel = duplicated_blocks(300);
    BootstrapOptions opts;
    opts.replicas = 50;
    opts.seed = 3;
    const auto rep = bootstrap_stability(panel, FilterKind::MST, opts);
    REQUIRE(rep.edges.size() == 5);
    for (std::size_t k = 0; k < rep.edges.size(); ++k) {
        const auto [u, v] = rep.edges[k];
        if ((u < 3) == (v < 3)) CHECK(rep.support[k] == 1.0);
    }
}

TEST_CASE("bootstrap report is consistent and reproducible") {
    FactorModelSpec spec;
    spec.n_assets = 8;
    spec.blocks = {{4, 0.8}, {4, 0.8}};
    spec.idiosyncratic_sigma = 0.6;
    spec.t_len = 500;
    spec.seed = 12;
    const auto fp = gen_factor_panel(spec);
    BootstrapOptions opts;
    opts.replicas = 100;
    opts.seed = 77;
    const auto a = bootstrap_stability(fp.panel, FilterKind::TMFG, opts);
    const auto b = bootstrap_stability(fp.panel, FilterKind::TMFG, opts);
    CHECK(a.support == b.support);
    CHECK(a.replica_count == 100);
    std::size_t above = 0;
    for (double s : a.support) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        if (s > opts.threshold) ++above;
    }
    CHECK(a.frac_edges_above_threshold == Approx(static_cast<double>(above) / a.support.size()));
    REQUIRE(a.support_of(a.edges.front()).has_value());
    CHECK_FALSE(a.support_of({0, 0}).has_value());
}

TEST_CASE("bootstrap gives up on a series that is constant almost everywhere") {
    std::vector<double> spike(40, 0.0);
    spike[7] = 1.0;
    const auto noise = test::noise_panel(2, 40, 1);
    const auto panel = test::panel_from_rows({spike, std::vector<double>(noise.row(0).begin(), noise.row(0).end()),
                                              std::vector<double>(noise.row(1).begin(), noise.row(1).end())});
    BootstrapOptions opts;
    opts.replicas = 200;
    opts.max_redraws = 0;
    CHECK_THROWS_MATCHES(bootstrap_stability(panel, FilterKind::MST, opts), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return has(ErrorCode::DegenerateReplica, e); }));
}
