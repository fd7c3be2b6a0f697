#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fnet/graph.hpp"
#include "fnet/taxonomy.hpp"

namespace fnet {

enum class GraphFormat { GraphML, DOT };

[[nodiscard]] const char* to_string(GraphFormat format) noexcept;
[[nodiscard]] const char* file_extension(GraphFormat format) noexcept;
[[nodiscard]] GraphFormat parse_graph_format(const std::string& name);

/// Nodes whose degree is strictly above the 90th percentile of the degree
/// distribution.
[[nodiscard]] std::vector<bool> hub_flags(const FilteredGraph& graph);

/// Node attributes: symbol, sector (from `taxonomy`, "unknown" if absent), hub.
/// Edge attributes: correlation, dissimilarity, negative, style (dashed when
/// negative) and color (red when negative).
void write_graphml(std::ostream& out, const FilteredGraph& graph, const SectorTaxonomy& taxonomy);
void write_dot(std::ostream& out, const FilteredGraph& graph, const SectorTaxonomy& taxonomy);

/// Throws IoError when the file cannot be written.
void export_graph(const FilteredGraph& graph, const SectorTaxonomy& taxonomy, GraphFormat format,
                  const std::string& path);

/// Edge list CSV `u,v,source,target,correlation,dissimilarity,negative` with
/// full-precision numbers; read_edge_csv restores the graph exactly.
void write_edge_csv(std::ostream& out, const FilteredGraph& graph);
[[nodiscard]] FilteredGraph read_edge_csv(std::istream& in, FilterKind kind,
                                          std::vector<std::string> symbols,
                                          const std::string& source = "<input>");

}  // namespace fnet
