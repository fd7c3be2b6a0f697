#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fnet/market_data.hpp"
#include "fnet/taxonomy.hpp"

namespace fnet {

struct FactorBlock {
    std::size_t members = 0;
    /// Loading on the block factor, in [0, 1].
    double loading = 0.0;
};

/// Asset i in block b: r_i(t) = loading_b * f_b(t) + sigma * e_i(t) with
/// independent standard normal factors and noise.
struct FactorModelSpec {
    std::size_t n_assets = 0;
    std::vector<FactorBlock> blocks;
    double idiosyncratic_sigma = 1.0;
    std::size_t t_len = 0;
    std::uint64_t seed = 0;
    std::int64_t horizon_s = 15;
    Timestamp start = 1609459200;  // 2021-01-01T00:00:00Z
};

struct FactorPanel {
    ReturnPanel panel;
    /// Block index of each asset.
    std::vector<std::size_t> block_of;
    /// loading^2 / (loading^2 + sigma^2) per block.
    std::vector<double> theoretical_intra_corr;
    /// Block names ("block0", ...) usable as sectors.
    SectorTaxonomy taxonomy;
};

[[nodiscard]] FactorPanel gen_factor_panel(const FactorModelSpec& spec);

/// Latent one-factor log-price random walk observed through stale quotes: at
/// every tick each asset's observed price catches up with the latent price
/// with probability `update_probability`, otherwise it keeps its last value.
struct AsyncModelSpec {
    std::size_t n_assets = 0;
    /// Correlation of latent per-tick increments, in [0, 1].
    double latent_corr = 0.0;
    double update_probability = 1.0;
    std::int64_t base_tick_s = 1;
    std::size_t t_len_ticks = 0;
    std::uint64_t seed = 0;
    /// Standard deviation of one latent log-price increment.
    double tick_volatility = 1e-4;
    Timestamp start = 1609459200;
};

/// Observed log prices (relative to the initial price) at ticks 0..t_len_ticks.
struct AsyncPaths {
    std::vector<std::string> symbols;
    std::size_t ticks = 0;  // points per asset, t_len_ticks + 1
    std::vector<double> observed;
    std::vector<double> latent;

    [[nodiscard]] std::span<const double> observed_row(std::size_t i) const {
        return {observed.data() + i * ticks, ticks};
    }
};

[[nodiscard]] AsyncPaths gen_async_paths(const AsyncModelSpec& spec);

/// Close-to-close log returns of the observed prices at each horizon.
[[nodiscard]] std::map<std::int64_t, ReturnPanel> gen_async_panel(
    const AsyncModelSpec& spec, std::span<const std::int64_t> horizons);

/// Same binning applied to precomputed paths.
[[nodiscard]] ReturnPanel bin_async_paths(const AsyncModelSpec& spec, const AsyncPaths& paths,
                                          std::int64_t horizon_s, bool use_latent = false);

/// Price bars reconstructed from a return panel: close_t = p0 * exp(cumsum r),
/// open = previous close, unit volume. The first bar is flat at p0.
[[nodiscard]] std::vector<BarSeries> bars_from_returns(const ReturnPanel& panel, Timestamp start,
                                                       double initial_price = 100.0);

/// OHLCV bars at `bar_horizon_s` from observed tick prices; bar b spans ticks
/// (b*m, (b+1)*m] and is stamped with its start time.
[[nodiscard]] std::vector<BarSeries> bars_from_async_paths(const AsyncModelSpec& spec,
                                                           const AsyncPaths& paths,
                                                           std::int64_t bar_horizon_s,
                                                           double initial_price = 100.0);

}  // namespace fnet
