#include "fnet/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fnet/adf.hpp"
#include "fnet/analysis.hpp"
#include "fnet/cliques.hpp"
#include "fnet/error.hpp"
#include "fnet/filtering.hpp"
#include "fnet/market_data.hpp"
#include "fnet/parallel.hpp"
#include "fnet/rng.hpp"
#include "fnet/simd/kernels.hpp"
#include "fnet/taxonomy.hpp"
#include "fnet/validation.hpp"

namespace fnet {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kHistogramBins = 40;
constexpr double kTableQuantiles[] = {25.0, 75.0};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* end = value.data() + value.size();
    auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) {
        throw Error(ErrorCode::ConfigError, "bad value for " + key + ": '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw Error(ErrorCode::ConfigError, "bad boolean for " + key + ": '" + value + "'");
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (base_dir.empty() || path.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(base_dir) / path).lexically_normal().string();
}

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    return format_iso8601(std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count());
}

std::string horizon_dir(std::int64_t h) { return "h" + std::to_string(h); }

void write_file(const fs::path& root, const std::string& rel, const std::string& content) {
    const fs::path path = root / rel;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, path.string() + ": " + e.what());
    }
}

json summary_json(const CorrelationSummary& s) {
    json pct = json::object();
    for (const auto& [level, value] : s.percentiles) pct[shortest(level)] = value;
    return json{{"count", s.count}, {"mean", s.mean}, {"mean_abs", s.mean_abs}, {"percentiles", pct}};
}

/// Summary of |rho|: mean plus the quartiles used by the filtered-correlation table.
json abs_summary_json(const std::vector<double>& coeffs) {
    std::vector<double> abs_values(coeffs.size());
    std::transform(coeffs.begin(), coeffs.end(), abs_values.begin(),
                   [](double r) { return std::abs(r); });
    const auto s = summarize(std::move(abs_values), kTableQuantiles);
    return json{{"count", s.count}, {"mean_abs", s.mean_abs}, {"q25", s.percentiles.at(25.0)},
                {"q75", s.percentiles.at(75.0)}};
}

json significance_json(const SignificanceAnnotation& a) {
    return json{{"links_within_envelope", a.links_within_envelope},
                {"total_links", a.total_links},
                {"p_value", a.p_value},
                {"stars", to_string(a.stars)}};
}

std::vector<std::size_t> histogram(const std::vector<double>& values) {
    std::vector<std::size_t> counts(kHistogramBins, 0);
    for (double v : values) {
        auto bin = static_cast<std::size_t>(std::floor((v + 1.0) / 2.0 * kHistogramBins));
        counts[std::min(bin, kHistogramBins - 1)]++;
    }
    return counts;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::int64_t horizon) {
    return mix64(mix64(master ^ mix64(tag)) ^ static_cast<std::uint64_t>(horizon));
}

SectorTaxonomy load_taxonomy(const PipelineConfig& config) {
    try {
        return read_taxonomy_file(config.taxonomy_path);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IoError) {
            throw Error(ErrorCode::MissingData, "taxonomy " + config.taxonomy_path + ": " + e.message());
        }
        throw;
    }
}

std::vector<BarSeries> load_base_series(const PipelineConfig& config, const SectorTaxonomy& taxonomy) {
    std::vector<BarSeries> out;
    for (const auto& symbol : taxonomy.symbols()) {
        const fs::path path = fs::path(config.data_dir) / (symbol + ".csv");
        if (!fs::exists(path)) {
            throw Error(ErrorCode::MissingData, "symbol " + symbol + " at horizon " +
                                                    std::to_string(config.base_horizon_s) +
                                                    "s: no file " + path.string());
        }
        out.push_back(read_ohlcv_file(path.string(), symbol, config.base_horizon_s));
    }
    if (out.size() < 2) throw Error(ErrorCode::ConfigError, "taxonomy lists fewer than 2 symbols");
    return out;
}

struct PreparedHorizon {
    std::vector<BarSeries> bars;
    std::map<std::string, std::size_t> filled;
};

PreparedHorizon prepare_horizon(const PipelineConfig& config, const std::vector<BarSeries>& base,
                                std::int64_t h) {
    PreparedHorizon out;
    for (const auto& series : base) {
        std::size_t filled = 0;
        BarSeries s;
        if (config.fill_before_resample) {
            auto g = fill_gaps(series);
            filled += g.filled;
            s = h == series.horizon_s ? std::move(g.series) : resample(g.series, h);
            if (!s.contiguous()) {
                auto g2 = fill_gaps(s);
                filled += g2.filled;
                s = std::move(g2.series);
            }
        } else {
            auto g = fill_gaps(h == series.horizon_s ? series : resample(series, h));
            filled += g.filled;
            s = std::move(g.series);
        }
        out.filled[s.symbol] = filled;
        out.bars.push_back(std::move(s));
    }
    return out;
}

/// Sectors of the raw taxonomy with at least two members in the universe.
std::vector<std::string> analysable_sectors(const SectorTaxonomy& taxonomy,
                                            const std::vector<std::string>& universe) {
    std::vector<std::string> out;
    for (const auto& sector : taxonomy.sectors()) {
        if (taxonomy.member_indices(sector, universe).size() >= 2) out.push_back(sector);
    }
    return out;
}

class HorizonRunner {
public:
    HorizonRunner(const PipelineConfig& config, const SectorTaxonomy& taxonomy,
                  const std::vector<BarSeries>& base, fs::path root, HorizonArtifacts& art)
        : config_(config), taxonomy_(taxonomy), base_(base), root_(std::move(root)), art_(art) {}

    void run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::int64_t h = art_.horizon_s;
        const std::string dir = horizon_dir(h);

        auto prepared = prepare_horizon(config_, base_, h);
        const ReturnPanel panel = build_return_panel(prepared.bars);
        const auto& symbols = panel.symbols;

        json report;
        report["horizon_s"] = h;
        report["n_assets"] = panel.n();
        report["t_len"] = panel.t_len;
        report["symbols"] = symbols;
        report["dissimilarity"] = to_string(config_.dissimilarity);
        json fills = json::object();
        for (const auto& [sym, n] : prepared.filled) fills[sym] = n;
        report["gap_filled_bars"] = fills;

        json adf = json::object();
        for (std::size_t i = 0; i < panel.n(); ++i) {
            try {
                const auto r = adf_test(panel.row(i), config_.adf_lag);
                adf[symbols[i]] = json{{"statistic", r.statistic},
                                       {"lag_order", r.lag_order},
                                       {"nobs", r.nobs},
                                       {"critical_1pct", r.critical_1pct},
                                       {"critical_5pct", r.critical_5pct},
                                       {"critical_10pct", r.critical_10pct},
                                       {"reject_unit_root_5pct", r.reject_unit_root_5pct}};
            } catch (const Error& e) {
                if (e.code() != ErrorCode::InsufficientSamples &&
                    e.code() != ErrorCode::DegenerateSeries) {
                    throw;
                }
                adf[symbols[i]] = json{{"error", to_string(e.code())}};
            }
        }
        report["adf"] = adf;

        const auto corr = pearson_matrix(panel);
        const auto dissim = to_dissimilarity(corr, config_.dissimilarity);
        {
            std::ostringstream c, d;
            write_matrix_csv(c, corr.symbols, corr.values);
            write_matrix_csv(d, dissim.symbols, dissim.values);
            emit(dir + "/correlation.csv", c.str());
            emit(dir + "/dissimilarity.csv", d.str());
            json cj{{"symbols", corr.symbols}, {"t_len", corr.t_len}, {"values", corr.values}};
            emit(dir + "/correlation.json", cj.dump(1) + "\n");
        }

        const auto all_pairs = off_diagonal(corr);
        report["pairwise"] = summary_json(pairwise_summary(corr, config_.percentile_levels));
        report["pairwise_abs"] = abs_summary_json(all_pairs);

        const auto sectors = analysable_sectors(taxonomy_, symbols);
        json per_sector = json::object();
        for (const auto& sector : sectors) {
            per_sector[sector] =
                summary_json(sector_summary(corr, taxonomy_, sector, config_.percentile_levels));
        }
        report["per_sector"] = per_sector;

        const auto envelope = shuffle_null(panel, config_.shuffle_count,
                                           derive_seed(config_.master_seed, stream_domain::kShuffle, h),
                                           true);
        report["null_envelope"] = json{{"shuffle_count", envelope.shuffle_count},
                                       {"min_coeff", envelope.min_coeff},
                                       {"max_coeff", envelope.max_coeff}};
        json significance = json::object();
        significance["C"] = significance_json(annotate_significance(all_pairs, envelope));

        std::vector<double> filtered_levels = config_.percentile_levels;
        for (double q : kTableQuantiles) {
            if (std::find(filtered_levels.begin(), filtered_levels.end(), q) == filtered_levels.end()) {
                filtered_levels.push_back(q);
            }
        }
        std::sort(filtered_levels.begin(), filtered_levels.end());

        const SectorTaxonomy grouped = taxonomy_.grouped();
        json filters = json::object();
        for (std::size_t fi = 0; fi < config_.filters.size(); ++fi) {
            const FilterKind kind = config_.filters[fi];
            const std::string name = to_string(kind);
            const auto graph = build_filter(kind, dissim, corr);

            std::ostringstream edges_csv;
            write_edge_csv(edges_csv, graph);
            const std::string edge_rel = dir + "/" + name + "_edges.csv";
            emit(edge_rel, edges_csv.str());
            art_.edge_lists[name] = edge_rel;
            for (GraphFormat fmt : config_.graph_formats) {
                std::ostringstream g;
                if (fmt == GraphFormat::GraphML) {
                    write_graphml(g, graph, grouped);
                } else {
                    write_dot(g, graph, grouped);
                }
                const std::string rel = dir + "/" + name + file_extension(fmt);
                emit(rel, g.str());
                art_.graph_exports[name + "." + to_string(fmt)] = rel;
            }

            json f;
            f["edge_count"] = graph.edges.size();
            const auto coeffs = graph.edge_correlations();
            f["filtered_correlation"] = summary_json(filtered_correlation_summary(graph, filtered_levels));
            f["filtered_abs"] = abs_summary_json(coeffs);
            const auto sig = annotate_significance(coeffs, envelope);
            significance[name] = significance_json(sig);
            f["significance"] = significance_json(sig);
            f["avg_shortest_path"] = average_shortest_path(graph);

            const auto centrality = degree_centrality(graph);
            const auto degrees = graph.degrees();
            const auto hubs = hub_flags(graph);
            json dc = json::object(), dg = json::object(), hub_list = json::array();
            for (std::size_t v = 0; v < graph.n(); ++v) {
                dc[symbols[v]] = centrality[v];
                dg[symbols[v]] = degrees[v];
                if (hubs[v]) hub_list.push_back(symbols[v]);
            }
            f["degree_centrality"] = dc;
            f["degree"] = dg;
            f["hubs"] = hub_list;

            json gdc = json::object();
            for (const auto& sector : grouped.sectors()) {
                const auto members = grouped.member_indices(sector, symbols);
                if (members.empty() || members.size() == symbols.size()) continue;
                gdc[sector] = group_degree_centrality(graph, members);
            }
            f["group_degree_centrality"] = gdc;

            const auto cliques = enumerate_cliques(graph);
            f["cliques"] = json{{"three_cliques", cliques.three_cliques.size()},
                                {"four_cliques", cliques.four_cliques.size()},
                                {"triangles_in_four_cliques", cliques.triangles_in_four_cliques()}};

            BootstrapOptions opts;
            opts.replicas = config_.bootstrap_replicas;
            opts.seed = derive_seed(config_.master_seed, stream_domain::kBootstrap + fi, h);
            opts.dissimilarity = config_.dissimilarity;
            opts.threshold = config_.bootstrap_threshold;
            const auto boot = bootstrap_stability(panel, graph, opts);
            json support = json::array();
            for (std::size_t k = 0; k < boot.edges.size(); ++k) {
                support.push_back(json{{"source", symbols[boot.edges[k].first]},
                                       {"target", symbols[boot.edges[k].second]},
                                       {"support", boot.support[k]}});
            }
            f["bootstrap"] = json{{"replicas", boot.replica_count},
                                  {"threshold", boot.threshold},
                                  {"frac_edges_above_threshold", boot.frac_edges_above_threshold},
                                  {"redraws", boot.redraws},
                                  {"support", support}};
            filters[name] = f;
        }
        report["significance"] = significance;
        report["filters"] = filters;

        std::vector<double> null_samples = envelope.null_coeff_samples.value_or(std::vector<double>{});
        json bin_edges = json::array();
        for (std::size_t b = 0; b <= kHistogramBins; ++b) {
            bin_edges.push_back(-1.0 + 2.0 * static_cast<double>(b) / kHistogramBins);
        }
        report["coefficient_distribution"] = json{{"bin_edges", bin_edges},
                                                  {"empirical", histogram(all_pairs)},
                                                  {"shuffled", histogram(null_samples)}};

        art_.report = dir + "/report.json";
        emit(art_.report, report.dump(1) + "\n");
        art_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

private:
    void emit(const std::string& rel, const std::string& content) {
        write_file(root_, rel, content);
        art_.files.push_back(rel);
    }

    const PipelineConfig& config_;
    const SectorTaxonomy& taxonomy_;
    const std::vector<BarSeries>& base_;
    fs::path root_;
    HorizonArtifacts& art_;
};

json manifest_json(const RunManifest& m) {
    std::ostringstream cfg_text;
    write_config(cfg_text, m.config);
    json cfg = json::object();
    std::istringstream cfg_in(cfg_text.str());
    for (const auto& [k, v] : parse_key_values(cfg_in, "<snapshot>")) cfg[k] = v;

    json horizons = json::array();
    for (const auto& h : m.horizons) {
        horizons.push_back(json{{"horizon_s", h.horizon_s},
                                {"report", h.report},
                                {"edge_lists", h.edge_lists},
                                {"graph_exports", h.graph_exports},
                                {"files", h.files},
                                {"seconds", h.seconds}});
    }
    return json{{"tool_version", m.tool_version},
                {"simd_isa", m.simd_isa},
                {"master_seed", m.config.master_seed},
                {"started_at", m.started_at},
                {"finished_at", m.finished_at},
                {"total_seconds", m.total_seconds},
                {"complete", m.complete},
                {"error", m.error},
                {"config", cfg},
                {"horizons", horizons},
                {"tables", m.table_files}};
}

const char* isa_name(simd::Isa isa) {
    switch (isa) {
        case simd::Isa::Scalar: return "scalar";
        case simd::Isa::Avx2: return "avx2";
        case simd::Isa::Neon: return "neon";
    }
    return "unknown";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in,
                                                                  const std::string& source) {
    std::vector<std::pair<std::string, std::string>> out;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigError,
                        source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw Error(ErrorCode::ConfigError, source + ":" + std::to_string(lineno) + ": empty key");
        }
        if (!seen.insert(key).second) {
            throw Error(ErrorCode::ConfigError,
                        source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

std::vector<std::int64_t> parse_horizon_list(const std::string& csv) {
    std::vector<std::int64_t> out;
    for (const auto& item : split_csv(csv)) out.push_back(parse_number<std::int64_t>("horizons", item));
    return out;
}

std::vector<FilterKind> parse_filter_list(const std::string& csv) {
    std::vector<FilterKind> out;
    for (const auto& item : split_csv(csv)) out.push_back(parse_filter_kind(item));
    return out;
}

PipelineConfig parse_config(std::istream& in, const std::string& source, const std::string& base_dir) {
    PipelineConfig c;
    for (const auto& [key, value] : parse_key_values(in, source)) {
        if (key == "data_dir") {
            c.data_dir = resolve(base_dir, value);
        } else if (key == "taxonomy") {
            c.taxonomy_path = resolve(base_dir, value);
        } else if (key == "output_dir") {
            c.output_dir = resolve(base_dir, value);
        } else if (key == "base_horizon_s") {
            c.base_horizon_s = parse_number<std::int64_t>(key, value);
        } else if (key == "horizons") {
            c.horizons_s = parse_horizon_list(value);
        } else if (key == "dissimilarity") {
            c.dissimilarity = parse_dissimilarity_kind(value);
        } else if (key == "filters") {
            c.filters = parse_filter_list(value);
        } else if (key == "bootstrap_replicas") {
            c.bootstrap_replicas = parse_number<std::size_t>(key, value);
        } else if (key == "shuffle_count") {
            c.shuffle_count = parse_number<std::size_t>(key, value);
        } else if (key == "bootstrap_threshold") {
            c.bootstrap_threshold = parse_number<double>(key, value);
        } else if (key == "percentile_levels") {
            c.percentile_levels.clear();
            for (const auto& item : split_csv(value)) c.percentile_levels.push_back(parse_number<double>(key, item));
        } else if (key == "master_seed") {
            c.master_seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "adf_lag") {
            if (value == "auto") {
                c.adf_lag.reset();
            } else {
                c.adf_lag = parse_number<std::size_t>(key, value);
            }
        } else if (key == "graph_formats") {
            c.graph_formats.clear();
            for (const auto& item : split_csv(value)) c.graph_formats.push_back(parse_graph_format(item));
        } else if (key == "fill_before_resample") {
            c.fill_before_resample = parse_bool(key, value);
        } else {
            throw Error(ErrorCode::ConfigError, source + ": unknown key '" + key + "'");
        }
    }
    return c;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path);
    return parse_config(in, path, fs::path(path).parent_path().string());
}

void write_config(std::ostream& out, const PipelineConfig& c) {
    auto join = [](const auto& items, auto fmt) {
        std::string s;
        for (const auto& item : items) {
            if (!s.empty()) s += ',';
            s += fmt(item);
        }
        return s;
    };
    std::string s;
    s += "data_dir = " + c.data_dir + "\n";
    s += "taxonomy = " + c.taxonomy_path + "\n";
    s += "base_horizon_s = " + std::to_string(c.base_horizon_s) + "\n";
    s += "horizons = " + join(c.horizons_s, [](std::int64_t h) { return std::to_string(h); }) + "\n";
    s += std::string("dissimilarity = ") + to_string(c.dissimilarity) + "\n";
    s += "filters = " + join(c.filters, [](FilterKind k) { return std::string(to_string(k)); }) + "\n";
    s += "bootstrap_replicas = " + std::to_string(c.bootstrap_replicas) + "\n";
    s += "shuffle_count = " + std::to_string(c.shuffle_count) + "\n";
    s += "bootstrap_threshold = " + shortest(c.bootstrap_threshold) + "\n";
    s += "percentile_levels = " + join(c.percentile_levels, [](double v) { return shortest(v); }) + "\n";
    s += "master_seed = " + std::to_string(c.master_seed) + "\n";
    s += "output_dir = " + c.output_dir + "\n";
    s += "adf_lag = " + (c.adf_lag ? std::to_string(*c.adf_lag) : std::string("auto")) + "\n";
    s += "graph_formats = " +
         join(c.graph_formats, [](GraphFormat f) { return std::string(to_string(f)); }) + "\n";
    s += std::string("fill_before_resample = ") + (c.fill_before_resample ? "true" : "false") + "\n";
    out << s;
}

void apply_env_overrides(PipelineConfig& config) {
    if (const char* dir = std::getenv("FNET_OUTPUT_DIR"); dir && *dir) config.output_dir = dir;
    if (const char* seed = std::getenv("FNET_MASTER_SEED"); seed && *seed) {
        config.master_seed = parse_number<std::uint64_t>("FNET_MASTER_SEED", seed);
    }
}

void validate_config(const PipelineConfig& c) {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); };
    if (c.base_horizon_s <= 0) fail("base_horizon_s must be positive");
    if (c.horizons_s.empty()) fail("no horizons configured");
    std::set<std::int64_t> seen_h;
    for (auto h : c.horizons_s) {
        if (h <= 0 || h % c.base_horizon_s != 0) {
            fail("horizon " + std::to_string(h) + "s is not a multiple of the base horizon " +
                 std::to_string(c.base_horizon_s) + "s");
        }
        if (!seen_h.insert(h).second) fail("duplicate horizon " + std::to_string(h));
    }
    if (c.filters.empty()) fail("filter set is empty");
    std::set<FilterKind> seen_f(c.filters.begin(), c.filters.end());
    if (seen_f.size() != c.filters.size()) fail("duplicate filter");
    if (c.bootstrap_replicas == 0) fail("bootstrap_replicas must be positive");
    if (c.shuffle_count == 0) fail("shuffle_count must be positive");
    if (!(c.bootstrap_threshold >= 0.0 && c.bootstrap_threshold < 1.0)) {
        fail("bootstrap_threshold must lie in [0, 1)");
    }
    if (c.percentile_levels.empty()) fail("percentile_levels is empty");
    for (double p : c.percentile_levels) {
        if (!(p > 0.0 && p < 100.0)) fail("percentile levels must lie in (0, 100)");
    }
    if (c.output_dir.empty()) fail("output_dir is empty");
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    const fs::path p(path);
    write_file(p.parent_path(), p.filename().string(), manifest_json(manifest).dump(1) + "\n");
}

RunManifest read_manifest(const std::string& path) {
    const json j = read_json(path);
    RunManifest m;
    try {
        std::string cfg_text;
        for (const auto& [k, v] : j.at("config").items()) cfg_text += k + " = " + v.get<std::string>() + "\n";
        std::istringstream cfg_in(cfg_text);
        m.config = parse_config(cfg_in, path);
        m.tool_version = j.at("tool_version").get<std::string>();
        m.simd_isa = j.at("simd_isa").get<std::string>();
        m.started_at = j.at("started_at").get<std::string>();
        m.finished_at = j.at("finished_at").get<std::string>();
        m.total_seconds = j.at("total_seconds").get<double>();
        m.complete = j.at("complete").get<bool>();
        m.error = j.at("error").get<std::string>();
        for (const auto& h : j.at("horizons")) {
            HorizonArtifacts a;
            a.horizon_s = h.at("horizon_s").get<std::int64_t>();
            a.report = h.at("report").get<std::string>();
            a.edge_lists = h.at("edge_lists").get<std::map<std::string, std::string>>();
            a.graph_exports = h.at("graph_exports").get<std::map<std::string, std::string>>();
            a.files = h.at("files").get<std::vector<std::string>>();
            a.seconds = h.at("seconds").get<double>();
            m.horizons.push_back(std::move(a));
        }
        m.table_files = j.at("tables").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IncompleteManifest, path + ": " + e.what());
    }
    return m;
}

RunManifest run_pipeline(const PipelineConfig& config) {
    validate_config(config);
    const auto t0 = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.config = config;
    std::sort(manifest.config.horizons_s.begin(), manifest.config.horizons_s.end());
    manifest.simd_isa = isa_name(simd::active_kernels().isa);
    manifest.started_at = now_iso8601();
    const fs::path root(config.output_dir);
    const std::string manifest_path = (root / "manifest.json").string();

    auto finish = [&] {
        manifest.finished_at = now_iso8601();
        manifest.total_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(manifest, manifest_path);
    };

    try {
        std::error_code ec;
        fs::create_directories(root, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create " + root.string() + ": " + ec.message());

        const SectorTaxonomy taxonomy = load_taxonomy(manifest.config);
        const auto base = load_base_series(manifest.config, taxonomy);

        const auto& horizons = manifest.config.horizons_s;
        manifest.horizons.resize(horizons.size());
        for (std::size_t i = 0; i < horizons.size(); ++i) manifest.horizons[i].horizon_s = horizons[i];
        parallel_for(horizons.size(), [&](std::size_t i) {
            try {
                HorizonRunner(manifest.config, taxonomy, base, root, manifest.horizons[i]).run();
            } catch (const Error& e) {
                throw Error(e.code(), "horizon " + std::to_string(horizons[i]) + "s: " + e.message());
            }
        });
        report_tables(manifest);
        manifest.complete = true;
    } catch (const std::exception& e) {
        manifest.complete = false;
        manifest.error = e.what();
        try {
            finish();
        } catch (...) {
        }
        throw;
    }
    finish();
    return manifest;
}

void report_tables(RunManifest& manifest) {
    const auto& config = manifest.config;
    if (config.filters.empty()) throw Error(ErrorCode::IncompleteManifest, "no filter was run");
    if (manifest.horizons.empty()) throw Error(ErrorCode::IncompleteManifest, "no horizon reports");
    const fs::path root(config.output_dir);

    std::vector<json> reports;
    for (const auto& h : manifest.horizons) {
        if (h.report.empty() || !fs::exists(root / h.report)) {
            throw Error(ErrorCode::IncompleteManifest,
                        "missing report for horizon " + std::to_string(h.horizon_s) + "s");
        }
        reports.push_back(read_json(root / h.report));
    }

    std::vector<std::string> structures{"C"};
    for (FilterKind k : config.filters) structures.emplace_back(to_string(k));
    for (const auto& r : reports) {
        for (std::size_t s = 1; s < structures.size(); ++s) {
            if (!r.at("filters").contains(structures[s])) {
                throw Error(ErrorCode::IncompleteManifest,
                            "horizon " + std::to_string(r.at("horizon_s").get<std::int64_t>()) +
                                "s has no " + structures[s] + " results");
            }
        }
    }
    auto abs_of = [](const json& r, const std::string& s) -> const json& {
        return s == "C" ? r.at("pairwise_abs") : r.at("filters").at(s).at("filtered_abs");
    };

    auto emit = [&](const std::string& rel, const std::string& content) {
        write_file(root, rel, content);
        manifest.table_files.push_back(rel);
    };

    // Mean |rho| with stars and quartiles, per structure.
    {
        std::string csv = "horizon_s";
        for (const auto& s : structures) csv += "," + s + "_mean_abs," + s + "_q25," + s + "_q75";
        csv += "\n";
        json rows = json::array();
        for (const auto& r : reports) {
            csv += std::to_string(r.at("horizon_s").get<std::int64_t>());
            json row{{"horizon_s", r.at("horizon_s")}};
            for (const auto& s : structures) {
                const json& a = abs_of(r, s);
                const std::string stars = r.at("significance").at(s).at("stars").get<std::string>();
                csv += "," + fixed(a.at("mean_abs").get<double>(), 4) + stars + "," +
                       fixed(a.at("q25").get<double>(), 4) + "," + fixed(a.at("q75").get<double>(), 4);
                row[s] = json{{"mean_abs", a.at("mean_abs")},
                              {"stars", stars},
                              {"p_value", r.at("significance").at(s).at("p_value")},
                              {"q25", a.at("q25")},
                              {"q75", a.at("q75")}};
            }
            csv += "\n";
            rows.push_back(row);
        }
        emit("tables/filtered_correlation.csv", csv);
        emit("tables/filtered_correlation.json", rows.dump(1) + "\n");
    }

    // Percentage of edges whose bootstrap support exceeds the threshold.
    {
        std::string csv = "horizon_s";
        for (std::size_t s = 1; s < structures.size(); ++s) csv += "," + structures[s] + "_pct_above";
        csv += "\n";
        json rows = json::array();
        for (const auto& r : reports) {
            csv += std::to_string(r.at("horizon_s").get<std::int64_t>());
            json row{{"horizon_s", r.at("horizon_s")}, {"threshold", config.bootstrap_threshold}};
            for (std::size_t s = 1; s < structures.size(); ++s) {
                const double pct =
                    100.0 * r.at("filters").at(structures[s]).at("bootstrap").at("frac_edges_above_threshold").get<double>();
                csv += "," + fixed(pct, 1);
                row[structures[s]] = pct;
            }
            csv += "\n";
            rows.push_back(row);
        }
        emit("tables/link_stability.csv", csv);
        emit("tables/link_stability.json", rows.dump(1) + "\n");
    }

    // Links inside the shuffle envelope.
    {
        std::string csv = "horizon_s";
        for (const auto& s : structures) csv += "," + s;
        csv += "\n";
        json rows = json::array();
        for (const auto& r : reports) {
            csv += std::to_string(r.at("horizon_s").get<std::int64_t>());
            json row{{"horizon_s", r.at("horizon_s")}};
            for (const auto& s : structures) {
                const json& sig = r.at("significance").at(s);
                csv += "," + std::to_string(sig.at("links_within_envelope").get<std::size_t>());
                row[s] = sig;
            }
            csv += "\n";
            rows.push_back(row);
        }
        emit("tables/envelope_counts.csv", csv);
        emit("tables/envelope_counts.json", rows.dump(1) + "\n");
    }

    // Clique counts (distinct triangles and per-4-clique multiplicity).
    {
        std::string csv = "horizon_s,filter,three_cliques,four_cliques,triangles_in_four_cliques\n";
        for (const auto& r : reports) {
            for (std::size_t s = 1; s < structures.size(); ++s) {
                const json& c = r.at("filters").at(structures[s]).at("cliques");
                csv += std::to_string(r.at("horizon_s").get<std::int64_t>()) + "," + structures[s] + "," +
                       std::to_string(c.at("three_cliques").get<std::size_t>()) + "," +
                       std::to_string(c.at("four_cliques").get<std::size_t>()) + "," +
                       std::to_string(c.at("triangles_in_four_cliques").get<std::size_t>()) + "\n";
            }
        }
        emit("tables/clique_counts.csv", csv);
    }

    // Plot series.
    json epps = json::array();
    json paths = json::object();
    json degree = json::object();
    json group = json::object();
    json dist = json::array();
    for (std::size_t s = 1; s < structures.size(); ++s) {
        paths[structures[s]] = json::array();
        degree[structures[s]] = json::array();
        group[structures[s]] = json::array();
    }
    for (const auto& r : reports) {
        const json h = r.at("horizon_s");
        epps.push_back(json{{"horizon_s", h}, {"pairwise", r.at("pairwise")}, {"per_sector", r.at("per_sector")}});
        for (std::size_t s = 1; s < structures.size(); ++s) {
            const json& f = r.at("filters").at(structures[s]);
            paths[structures[s]].push_back(json{{"horizon_s", h}, {"avg_shortest_path", f.at("avg_shortest_path")}});
            degree[structures[s]].push_back(json{{"horizon_s", h},
                                                 {"degree_centrality", f.at("degree_centrality")},
                                                 {"degree", f.at("degree")},
                                                 {"hubs", f.at("hubs")}});
            group[structures[s]].push_back(
                json{{"horizon_s", h}, {"group_degree_centrality", f.at("group_degree_centrality")}});
        }
        json d = r.at("coefficient_distribution");
        d["horizon_s"] = h;
        dist.push_back(d);
    }
    emit("tables/series_epps.json", epps.dump(1) + "\n");
    emit("tables/series_path_length.json", paths.dump(1) + "\n");
    emit("tables/series_degree.json", degree.dump(1) + "\n");
    emit("tables/series_group_degree.json", group.dump(1) + "\n");
    emit("tables/series_coefficient_distribution.json", dist.dump(1) + "\n");
}

std::vector<std::string> run_ingest(const PipelineConfig& config) {
    validate_config(config);
    const fs::path root(config.output_dir);
    const SectorTaxonomy taxonomy = load_taxonomy(config);
    const auto base = load_base_series(config, taxonomy);
    auto horizons = config.horizons_s;
    std::sort(horizons.begin(), horizons.end());

    std::vector<std::string> files;
    json summary = json::array();
    for (std::int64_t h : horizons) {
        auto prepared = prepare_horizon(config, base, h);
        const std::string dir = "ingest/" + horizon_dir(h);
        for (const auto& s : prepared.bars) {
            std::ostringstream out;
            write_ohlcv(out, s);
            const std::string rel = dir + "/" + s.symbol + ".csv";
            write_file(root, rel, out.str());
            files.push_back(rel);
        }
        const ReturnPanel panel = build_return_panel(prepared.bars);
        std::string csv = "timestamp";
        for (const auto& sym : panel.symbols) csv += "," + sym;
        csv += "\n";
        for (std::size_t t = 0; t < panel.t_len; ++t) {
            csv += format_iso8601(panel.timestamps[t]);
            for (std::size_t i = 0; i < panel.n(); ++i) csv += "," + shortest(panel.row(i)[t]);
            csv += "\n";
        }
        const std::string rel = dir + "/returns.csv";
        write_file(root, rel, csv);
        files.push_back(rel);
        json fills = json::object();
        for (const auto& [sym, n] : prepared.filled) fills[sym] = n;
        summary.push_back(json{{"horizon_s", h}, {"t_len", panel.t_len}, {"gap_filled_bars", fills}});
    }
    files.push_back("ingest/summary.json");
    write_file(root, "ingest/summary.json", json{{"horizons", summary}, {"files", files}}.dump(1) + "\n");
    return files;
}

std::vector<std::string> reexport_graphs(const std::string& manifest_path,
                                         const std::vector<GraphFormat>& formats,
                                         const std::string& out_dir) {
    const RunManifest m = read_manifest(manifest_path);
    if (!m.complete) throw Error(ErrorCode::IncompleteManifest, manifest_path + " is marked incomplete");
    const fs::path root = fs::path(manifest_path).parent_path();
    const SectorTaxonomy grouped = load_taxonomy(m.config).grouped();
    std::vector<std::string> written;
    for (const auto& h : m.horizons) {
        const json report = read_json(root / h.report);
        const auto symbols = report.at("symbols").get<std::vector<std::string>>();
        for (const auto& [name, rel] : h.edge_lists) {
            std::ifstream in(root / rel, std::ios::binary);
            if (!in) throw Error(ErrorCode::IoError, "cannot read " + (root / rel).string());
            const auto graph = read_edge_csv(in, parse_filter_kind(name), symbols, rel);
            for (GraphFormat fmt : formats) {
                const fs::path path = fs::path(out_dir) / horizon_dir(h.horizon_s) / (name + file_extension(fmt));
                std::error_code ec;
                fs::create_directories(path.parent_path(), ec);
                export_graph(graph, grouped, fmt, path.string());
                written.push_back(path.string());
            }
        }
    }
    return written;
}

SynthSpec parse_synth_spec(std::istream& in, const std::string& source) {
    SynthSpec spec;
    std::optional<std::string> blocks_text;
    for (const auto& [key, value] : parse_key_values(in, source)) {
        if (key == "model") {
            if (value != "factor" && value != "async") {
                throw Error(ErrorCode::ConfigError, "model must be 'factor' or 'async'");
            }
            spec.model = value;
        } else if (key == "n_assets") {
            spec.factor.n_assets = spec.async.n_assets = parse_number<std::size_t>(key, value);
        } else if (key == "seed") {
            spec.factor.seed = spec.async.seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "start") {
            spec.factor.start = spec.async.start = parse_iso8601(value);
        } else if (key == "blocks") {
            blocks_text = value;
        } else if (key == "sigma") {
            spec.factor.idiosyncratic_sigma = parse_number<double>(key, value);
        } else if (key == "t_len") {
            spec.factor.t_len = parse_number<std::size_t>(key, value);
        } else if (key == "horizon_s") {
            spec.factor.horizon_s = parse_number<std::int64_t>(key, value);
        } else if (key == "latent_corr") {
            spec.async.latent_corr = parse_number<double>(key, value);
        } else if (key == "update_probability") {
            spec.async.update_probability = parse_number<double>(key, value);
        } else if (key == "base_tick_s") {
            spec.async.base_tick_s = parse_number<std::int64_t>(key, value);
        } else if (key == "t_len_ticks") {
            spec.async.t_len_ticks = parse_number<std::size_t>(key, value);
        } else if (key == "tick_volatility") {
            spec.async.tick_volatility = parse_number<double>(key, value);
        } else if (key == "return_scale") {
            spec.return_scale = parse_number<double>(key, value);
        } else if (key == "bar_horizon_s") {
            spec.bar_horizon_s = parse_number<std::int64_t>(key, value);
        } else {
            throw Error(ErrorCode::ConfigError, source + ": unknown key '" + key + "'");
        }
    }
    if (blocks_text) {
        // "members:loading,members:loading"
        for (const auto& item : split_csv(*blocks_text)) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw Error(ErrorCode::ConfigError, "block '" + item + "' needs members:loading");
            spec.factor.blocks.push_back(FactorBlock{parse_number<std::size_t>("blocks", trim(item.substr(0, colon))),
                                                     parse_number<double>("blocks", trim(item.substr(colon + 1)))});
        }
    } else if (spec.model == "factor") {
        spec.factor.blocks.push_back(FactorBlock{spec.factor.n_assets, 0.0});
    }
    return spec;
}

SynthSpec load_synth_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open spec " + path);
    return parse_synth_spec(in, path);
}

std::vector<std::string> write_synthetic_dataset(const SynthSpec& spec, const std::string& out_dir) {
    const fs::path root(out_dir);
    std::vector<BarSeries> bars;
    SectorTaxonomy taxonomy;
    std::int64_t horizon = 0;
    if (spec.model == "factor") {
        auto fp = gen_factor_panel(spec.factor);
        if (!(spec.return_scale > 0.0)) throw Error(ErrorCode::InvalidSpec, "return_scale must be positive");
        for (double& r : fp.panel.returns) r *= spec.return_scale;
        bars = bars_from_returns(fp.panel, spec.factor.start);
        taxonomy = fp.taxonomy;
        horizon = spec.factor.horizon_s;
    } else {
        if (spec.bar_horizon_s <= 0 || spec.bar_horizon_s % spec.async.base_tick_s != 0) {
            throw Error(ErrorCode::NonDivisibleHorizon, "bar_horizon_s must be a multiple of base_tick_s");
        }
        const auto paths = gen_async_paths(spec.async);
        bars = bars_from_async_paths(spec.async, paths, spec.bar_horizon_s);
        for (const auto& s : bars) taxonomy.add(s.symbol, "market");
        horizon = spec.bar_horizon_s;
    }
    std::vector<std::string> written;
    for (const auto& s : bars) {
        std::ostringstream out;
        write_ohlcv(out, s);
        const std::string rel = "data/" + s.symbol + ".csv";
        write_file(root, rel, out.str());
        written.push_back((root / rel).string());
    }
    {
        std::ostringstream out;
        write_taxonomy(out, taxonomy);
        write_file(root, "taxonomy.csv", out.str());
        written.push_back((root / "taxonomy.csv").string());
    }
    PipelineConfig cfg;
    cfg.data_dir = "data";
    cfg.taxonomy_path = "taxonomy.csv";
    cfg.output_dir = "out";
    cfg.base_horizon_s = horizon;
    cfg.horizons_s = {horizon, 4 * horizon};
    std::ostringstream out;
    write_config(out, cfg);
    write_file(root, "config.txt", out.str());
    written.push_back((root / "config.txt").string());
    return written;
}

}  // namespace fnet
