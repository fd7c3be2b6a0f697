#include "fnet/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "fnet/error.hpp"
#include "fnet/rng.hpp"

namespace fnet {

namespace {

std::string asset_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "S%03zu", i);
    return buf;
}

void check_async(const AsyncModelSpec& spec) {
    if (spec.n_assets < 2) throw Error(ErrorCode::InvalidSpec, "need at least 2 assets");
    if (!(spec.update_probability > 0.0 && spec.update_probability <= 1.0)) {
        throw Error(ErrorCode::InvalidSpec, "update probability must lie in (0, 1]");
    }
    if (!(spec.latent_corr >= 0.0 && spec.latent_corr <= 1.0)) {
        throw Error(ErrorCode::InvalidSpec, "latent correlation must lie in [0, 1]");
    }
    if (spec.base_tick_s <= 0) throw Error(ErrorCode::InvalidSpec, "tick must be positive");
    if (spec.t_len_ticks < 1) throw Error(ErrorCode::InvalidSpec, "need at least one tick");
    if (!(spec.tick_volatility > 0.0)) {
        throw Error(ErrorCode::InvalidSpec, "tick volatility must be positive");
    }
}

}  // namespace

FactorPanel gen_factor_panel(const FactorModelSpec& spec) {
    std::size_t total = 0;
    for (const auto& b : spec.blocks) {
        if (b.members == 0) throw Error(ErrorCode::InvalidSpec, "empty block");
        if (!(b.loading >= 0.0 && b.loading <= 1.0)) {
            throw Error(ErrorCode::InvalidSpec, "block loading must lie in [0, 1]");
        }
        total += b.members;
    }
    if (spec.blocks.empty() || total != spec.n_assets) {
        throw Error(ErrorCode::InvalidSpec, "block sizes must sum to n_assets");
    }
    if (!(spec.idiosyncratic_sigma > 0.0)) {
        throw Error(ErrorCode::InvalidSpec, "idiosyncratic sigma must be positive");
    }
    if (spec.t_len < 3) throw Error(ErrorCode::InvalidSpec, "need t_len >= 3");
    if (spec.horizon_s <= 0) throw Error(ErrorCode::InvalidSpec, "horizon must be positive");

    const std::size_t t_len = spec.t_len;
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<std::vector<double>> factors(spec.blocks.size(), std::vector<double>(t_len));
    for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
        auto rng = make_stream(spec.seed, stream_domain::kFactorModel, b);
        for (auto& f : factors[b]) f = normal(rng);
    }

    FactorPanel out;
    out.panel.horizon_s = spec.horizon_s;
    out.panel.t_len = t_len;
    out.panel.returns.resize(spec.n_assets * t_len);
    std::size_t asset = 0;
    for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
        const double beta = spec.blocks[b].loading;
        const double sigma = spec.idiosyncratic_sigma;
        out.theoretical_intra_corr.push_back(beta * beta / (beta * beta + sigma * sigma));
        for (std::size_t k = 0; k < spec.blocks[b].members; ++k, ++asset) {
            const std::string name = asset_name(asset);
            out.panel.symbols.push_back(name);
            out.block_of.push_back(b);
            out.taxonomy.add(name, "block" + std::to_string(b));
            // noise streams sit above the factor stream indices
            auto rng = make_stream(spec.seed, stream_domain::kFactorModel,
                                   spec.blocks.size() + asset);
            auto row = out.panel.row(asset);
            for (std::size_t t = 0; t < t_len; ++t) {
                row[t] = beta * factors[b][t] + sigma * normal(rng);
            }
        }
    }
    out.panel.timestamps.resize(t_len);
    for (std::size_t t = 0; t < t_len; ++t) {
        out.panel.timestamps[t] = spec.start + static_cast<Timestamp>(t + 1) * spec.horizon_s;
    }
    return out;
}

AsyncPaths gen_async_paths(const AsyncModelSpec& spec) {
    check_async(spec);
    const std::size_t n = spec.n_assets;
    const std::size_t points = spec.t_len_ticks + 1;
    AsyncPaths paths;
    paths.ticks = points;
    paths.observed.assign(n * points, 0.0);
    paths.latent.assign(n * points, 0.0);
    for (std::size_t i = 0; i < n; ++i) paths.symbols.push_back(asset_name(i));

    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> market(spec.t_len_ticks);
    {
        auto rng = make_stream(spec.seed, stream_domain::kAsyncModel, 0);
        for (auto& m : market) m = normal(rng);
    }
    const double common = std::sqrt(spec.latent_corr);
    const double own = std::sqrt(1.0 - spec.latent_corr);
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = make_stream(spec.seed, stream_domain::kAsyncModel, 1 + i);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        double* latent = paths.latent.data() + i * points;
        double* observed = paths.observed.data() + i * points;
        for (std::size_t k = 1; k < points; ++k) {
            const double step = common * market[k - 1] + own * normal(rng);
            latent[k] = latent[k - 1] + spec.tick_volatility * step;
            const bool update = spec.update_probability >= 1.0 || coin(rng) < spec.update_probability;
            observed[k] = update ? latent[k] : observed[k - 1];
        }
    }
    return paths;
}

ReturnPanel bin_async_paths(const AsyncModelSpec& spec, const AsyncPaths& paths,
                            std::int64_t horizon_s, bool use_latent) {
    if (horizon_s <= 0 || horizon_s % spec.base_tick_s != 0) {
        throw Error(ErrorCode::NonDivisibleHorizon,
                    std::to_string(horizon_s) + " s is not a multiple of the " +
                        std::to_string(spec.base_tick_s) + " s tick");
    }
    const auto step = static_cast<std::size_t>(horizon_s / spec.base_tick_s);
    const std::size_t bins = (paths.ticks - 1) / step;
    if (bins < 3) {
        throw Error(ErrorCode::InvalidSpec,
                    "horizon " + std::to_string(horizon_s) + " s yields fewer than 3 returns");
    }
    const auto& source = use_latent ? paths.latent : paths.observed;
    ReturnPanel panel;
    panel.horizon_s = horizon_s;
    panel.symbols = paths.symbols;
    panel.t_len = bins;
    panel.returns.resize(paths.symbols.size() * bins);
    for (std::size_t i = 0; i < paths.symbols.size(); ++i) {
        const double* p = source.data() + i * paths.ticks;
        auto row = panel.row(i);
        for (std::size_t b = 0; b < bins; ++b) row[b] = p[(b + 1) * step] - p[b * step];
    }
    panel.timestamps.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        panel.timestamps[b] = spec.start + static_cast<Timestamp>(b + 1) * horizon_s;
    }
    return panel;
}

std::map<std::int64_t, ReturnPanel> gen_async_panel(const AsyncModelSpec& spec,
                                                    std::span<const std::int64_t> horizons) {
    check_async(spec);
    for (auto h : horizons) {
        if (h <= 0 || h % spec.base_tick_s != 0) {
            throw Error(ErrorCode::NonDivisibleHorizon,
                        std::to_string(h) + " s is not a multiple of the " +
                            std::to_string(spec.base_tick_s) + " s tick");
        }
    }
    const auto paths = gen_async_paths(spec);
    std::map<std::int64_t, ReturnPanel> out;
    for (auto h : horizons) out.emplace(h, bin_async_paths(spec, paths, h));
    return out;
}

std::vector<BarSeries> bars_from_returns(const ReturnPanel& panel, Timestamp start,
                                         double initial_price) {
    std::vector<BarSeries> out;
    for (std::size_t i = 0; i < panel.n(); ++i) {
        BarSeries s{panel.symbols[i], panel.horizon_s, {}};
        s.bars.reserve(panel.t_len + 1);
        double log_price = 0.0;
        double prev = initial_price;
        s.bars.push_back(OhlcvBar{start, prev, prev, prev, prev, 1.0});
        const auto row = panel.row(i);
        for (std::size_t t = 0; t < panel.t_len; ++t) {
            log_price += row[t];
            const double close = initial_price * std::exp(log_price);
            const Timestamp ts = start + static_cast<Timestamp>(t + 1) * panel.horizon_s;
            s.bars.push_back(OhlcvBar{ts, prev, std::max(prev, close), std::min(prev, close),
                                      close, 1.0});
            prev = close;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<BarSeries> bars_from_async_paths(const AsyncModelSpec& spec, const AsyncPaths& paths,
                                             std::int64_t bar_horizon_s, double initial_price) {
    if (bar_horizon_s <= 0 || bar_horizon_s % spec.base_tick_s != 0) {
        throw Error(ErrorCode::NonDivisibleHorizon, "bar horizon must be a multiple of the tick");
    }
    const auto step = static_cast<std::size_t>(bar_horizon_s / spec.base_tick_s);
    const std::size_t bins = (paths.ticks - 1) / step;
    std::vector<BarSeries> out;
    for (std::size_t i = 0; i < paths.symbols.size(); ++i) {
        BarSeries s{paths.symbols[i], bar_horizon_s, {}};
        const auto row = paths.observed_row(i);
        for (std::size_t b = 0; b < bins; ++b) {
            OhlcvBar bar;
            bar.timestamp = spec.start + static_cast<Timestamp>(b) * bar_horizon_s;
            bar.open = initial_price * std::exp(row[b * step]);
            bar.high = bar.open;
            bar.low = bar.open;
            std::size_t updates = 0;
            for (std::size_t k = b * step + 1; k <= (b + 1) * step; ++k) {
                const double p = initial_price * std::exp(row[k]);
                bar.high = std::max(bar.high, p);
                bar.low = std::min(bar.low, p);
                if (row[k] != row[k - 1]) ++updates;
            }
            bar.close = initial_price * std::exp(row[(b + 1) * step]);
            bar.volume = static_cast<double>(updates);
            s.bars.push_back(bar);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace fnet
