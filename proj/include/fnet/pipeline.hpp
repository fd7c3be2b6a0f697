#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fnet/correlation.hpp"
#include "fnet/export.hpp"
#include "fnet/graph.hpp"
#include "fnet/synth.hpp"

namespace fnet {

inline constexpr const char* kToolVersion = "fnet 0.1.0";

/// Run settings. The file format is one `key = value` per line, `#` starts a
/// comment; see README for the key list.
struct PipelineConfig {
    std::string data_dir = "data";
    std::string taxonomy_path = "taxonomy.csv";
    std::int64_t base_horizon_s = 15;
    std::vector<std::int64_t> horizons_s{15, 60, 900, 3600, 14400, 86400};
    DissimilarityKind dissimilarity = DissimilarityKind::Power;
    std::vector<FilterKind> filters{FilterKind::MST, FilterKind::TMFG};
    std::size_t bootstrap_replicas = 1000;
    std::size_t shuffle_count = 100;
    double bootstrap_threshold = 0.95;
    std::vector<double> percentile_levels{10.0, 50.0, 90.0};
    std::uint64_t master_seed = 0;
    std::string output_dir = "out";
    /// Schwert rule when unset.
    std::optional<std::size_t> adf_lag;
    std::vector<GraphFormat> graph_formats{GraphFormat::GraphML, GraphFormat::DOT};
    /// Fill gaps on the base grid before aggregating (otherwise aggregate first).
    bool fill_before_resample = true;
};

/// Ordered `key = value` pairs. Throws ConfigError on syntax errors and
/// duplicate keys.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> parse_key_values(
    std::istream& in, const std::string& source);

/// Relative paths in the file are taken relative to `base_dir` when it is nonempty.
[[nodiscard]] PipelineConfig parse_config(std::istream& in, const std::string& source = "<config>",
                                          const std::string& base_dir = "");
[[nodiscard]] PipelineConfig load_config(const std::string& path);
void write_config(std::ostream& out, const PipelineConfig& config);

/// FNET_OUTPUT_DIR and FNET_MASTER_SEED.
void apply_env_overrides(PipelineConfig& config);

/// Throws ConfigError.
void validate_config(const PipelineConfig& config);

[[nodiscard]] std::vector<std::int64_t> parse_horizon_list(const std::string& csv);
[[nodiscard]] std::vector<FilterKind> parse_filter_list(const std::string& csv);

struct HorizonArtifacts {
    std::int64_t horizon_s = 0;
    /// Paths are relative to the output directory.
    std::string report;
    std::map<std::string, std::string> edge_lists;       // filter -> csv
    std::map<std::string, std::string> graph_exports;    // "<filter>.<format>" -> file
    std::vector<std::string> files;
    double seconds = 0.0;
};

struct RunManifest {
    PipelineConfig config;
    std::string tool_version = kToolVersion;
    std::string simd_isa;
    std::string started_at;
    std::string finished_at;
    double total_seconds = 0.0;
    bool complete = false;
    std::string error;
    std::vector<HorizonArtifacts> horizons;
    /// Cross-horizon tables and series.
    std::vector<std::string> table_files;
};

void write_manifest(const RunManifest& manifest, const std::string& path);
[[nodiscard]] RunManifest read_manifest(const std::string& path);

/// Full analysis: per horizon panel, ADF, matrices, filters, exports,
/// bootstrap, shuffle null and report; then the cross-horizon tables. Writes
/// `<output_dir>/manifest.json` in every case; on failure it is marked
/// incomplete and the error is rethrown.
RunManifest run_pipeline(const PipelineConfig& config);

/// Writes the cross-horizon tables from the horizon reports named in the
/// manifest and appends them to `manifest.table_files`. Throws IncompleteManifest
/// when no filter was run or a horizon report is missing.
void report_tables(RunManifest& manifest);

/// Resamples and gap-fills every symbol at every horizon and writes the bars
/// and return panels. Returns the written paths relative to output_dir.
std::vector<std::string> run_ingest(const PipelineConfig& config);

/// Re-exports the graphs listed in a manifest into `out_dir`.
std::vector<std::string> reexport_graphs(const std::string& manifest_path,
                                         const std::vector<GraphFormat>& formats,
                                         const std::string& out_dir);

/// Synthetic data spec. `model` is "factor" or "async".
struct SynthSpec {
    std::string model = "factor";
    FactorModelSpec factor;
    AsyncModelSpec async;
    /// Bar width of the emitted CSVs for the async model.
    std::int64_t bar_horizon_s = 15;
    /// Factor-model returns are multiplied by this before prices are formed
    /// (unit-variance returns would otherwise overflow exp()).
    double return_scale = 1e-3;
};

[[nodiscard]] SynthSpec parse_synth_spec(std::istream& in, const std::string& source = "<spec>");
[[nodiscard]] SynthSpec load_synth_spec(const std::string& path);

/// Writes `<out>/data/<symbol>.csv`, `<out>/taxonomy.csv` and a ready-to-run
/// `<out>/config.txt`. Returns the written paths.
std::vector<std::string> write_synthetic_dataset(const SynthSpec& spec, const std::string& out_dir);

}  // namespace fnet
