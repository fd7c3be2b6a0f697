#include "fnet/export.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "fnet/correlation.hpp"
#include "fnet/error.hpp"

namespace fnet {

namespace {

std::string number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string sector_name(const SectorTaxonomy& taxonomy, const std::string& symbol) {
    return taxonomy.sector_of(symbol).value_or("unknown");
}

}  // namespace

const char* to_string(GraphFormat format) noexcept {
    return format == GraphFormat::GraphML ? "graphml" : "dot";
}

const char* file_extension(GraphFormat format) noexcept {
    return format == GraphFormat::GraphML ? ".graphml" : ".dot";
}

GraphFormat parse_graph_format(const std::string& name) {
    if (name == "graphml") return GraphFormat::GraphML;
    if (name == "dot") return GraphFormat::DOT;
    throw Error(ErrorCode::ConfigError, "unknown graph format '" + name + "'");
}

std::vector<bool> hub_flags(const FilteredGraph& graph) {
    const auto deg = graph.degrees();
    std::vector<bool> hubs(deg.size(), false);
    if (deg.empty()) return hubs;
    std::vector<double> sorted(deg.begin(), deg.end());
    std::sort(sorted.begin(), sorted.end());
    const double cut = quantile_sorted(sorted, 90.0);
    for (std::size_t v = 0; v < deg.size(); ++v) hubs[v] = static_cast<double>(deg[v]) > cut;
    return hubs;
}

void write_graphml(std::ostream& out, const FilteredGraph& graph, const SectorTaxonomy& taxonomy) {
    const auto hubs = hub_flags(graph);
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    s += "  <key id=\"symbol\" for=\"node\" attr.name=\"symbol\" attr.type=\"string\"/>\n";
    s += "  <key id=\"sector\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n";
    s += "  <key id=\"hub\" for=\"node\" attr.name=\"hub\" attr.type=\"boolean\"/>\n";
    s += "  <key id=\"correlation\" for=\"edge\" attr.name=\"correlation\" attr.type=\"double\"/>\n";
    s += "  <key id=\"dissimilarity\" for=\"edge\" attr.name=\"dissimilarity\" attr.type=\"double\"/>\n";
    s += "  <key id=\"negative\" for=\"edge\" attr.name=\"negative\" attr.type=\"boolean\"/>\n";
    s += "  <key id=\"style\" for=\"edge\" attr.name=\"style\" attr.type=\"string\"/>\n";
    s += "  <key id=\"color\" for=\"edge\" attr.name=\"color\" attr.type=\"string\"/>\n";
    s += "  <graph id=\"" + std::string(to_string(graph.kind)) + "\" edgedefault=\"undirected\">\n";
    for (std::size_t v = 0; v < graph.n(); ++v) {
        const auto& sym = graph.symbols[v];
        s += "    <node id=\"n" + std::to_string(v) + "\">\n";
        s += "      <data key=\"symbol\">" + xml_escape(sym) + "</data>\n";
        s += "      <data key=\"sector\">" + xml_escape(sector_name(taxonomy, sym)) + "</data>\n";
        s += std::string("      <data key=\"hub\">") + (hubs[v] ? "true" : "false") + "</data>\n";
        s += "    </node>\n";
    }
    for (std::size_t k = 0; k < graph.edges.size(); ++k) {
        const auto& e = graph.edges[k];
        s += "    <edge id=\"e" + std::to_string(k) + "\" source=\"n" + std::to_string(e.u) +
             "\" target=\"n" + std::to_string(e.v) + "\">\n";
        s += "      <data key=\"correlation\">" + number(e.correlation) + "</data>\n";
        s += "      <data key=\"dissimilarity\">" + number(e.dissimilarity) + "</data>\n";
        s += std::string("      <data key=\"negative\">") + (e.negative ? "true" : "false") +
             "</data>\n";
        s += std::string("      <data key=\"style\">") + (e.negative ? "dashed" : "solid") +
             "</data>\n";
        s += std::string("      <data key=\"color\">") + (e.negative ? "red" : "black") +
             "</data>\n";
        s += "    </edge>\n";
    }
    s += "  </graph>\n</graphml>\n";
    out << s;
}

void write_dot(std::ostream& out, const FilteredGraph& graph, const SectorTaxonomy& taxonomy) {
    const auto hubs = hub_flags(graph);
    std::string s = "graph " + std::string(to_string(graph.kind)) + " {\n";
    for (std::size_t v = 0; v < graph.n(); ++v) {
        const auto& sym = graph.symbols[v];
        s += "  " + dot_quote(sym) + " [symbol=" + dot_quote(sym) +
             ", sector=" + dot_quote(sector_name(taxonomy, sym)) +
             ", hub=" + (hubs[v] ? "true" : "false") +
             ", label=" + dot_quote(hubs[v] ? sym : "") + "];\n";
    }
    for (const auto& e : graph.edges) {
        s += "  " + dot_quote(graph.symbols[e.u]) + " -- " + dot_quote(graph.symbols[e.v]) +
             " [correlation=" + number(e.correlation) +
             ", dissimilarity=" + number(e.dissimilarity) +
             ", negative=" + (e.negative ? "true" : "false") +
             ", style=" + (e.negative ? "dashed" : "solid") +
             ", color=" + (e.negative ? "red" : "black") + "];\n";
    }
    s += "}\n";
    out << s;
}

void export_graph(const FilteredGraph& graph, const SectorTaxonomy& taxonomy, GraphFormat format,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    if (format == GraphFormat::GraphML) {
        write_graphml(out, graph, taxonomy);
    } else {
        write_dot(out, graph, taxonomy);
    }
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

void write_edge_csv(std::ostream& out, const FilteredGraph& graph) {
    std::string s = "u,v,source,target,correlation,dissimilarity,negative\n";
    for (const auto& e : graph.edges) {
        s += std::to_string(e.u) + ',' + std::to_string(e.v) + ',' + graph.symbols[e.u] + ',' +
             graph.symbols[e.v] + ',' + number(e.correlation) + ',' + number(e.dissimilarity) +
             ',' + (e.negative ? "1" : "0") + '\n';
    }
    out << s;
}

FilteredGraph read_edge_csv(std::istream& in, FilterKind kind, std::vector<std::string> symbols,
                            const std::string& source) {
    FilteredGraph graph{kind, std::move(symbols), {}};
    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line)) throw ParseError(ErrorCode::EmptyInput, source, 0, 0, "empty file");
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1) {
            f.push_back(line.substr(start, pos - start));
        }
        f.push_back(line.substr(start));
        if (f.size() != 7) throw ParseError(ErrorCode::MalformedRow, source, row, 0, "expected 7 fields");
        GraphEdge e;
        try {
            e.u = std::stoul(f[0]);
            e.v = std::stoul(f[1]);
            e.correlation = std::stod(f[4]);
            e.dissimilarity = std::stod(f[5]);
        } catch (const std::exception&) {
            throw ParseError(ErrorCode::MalformedRow, source, row, 0, "unparsable field");
        }
        e.negative = f[6] == "1";
        if (e.u >= graph.n() || e.v >= graph.n() || graph.symbols[e.u] != f[2] ||
            graph.symbols[e.v] != f[3]) {
            throw ParseError(ErrorCode::MalformedRow, source, row, 1, "edge endpoints do not match symbols");
        }
        graph.edges.push_back(e);
    }
    return graph;
}

}  // namespace fnet
