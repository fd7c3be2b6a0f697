#include "fnet/taxonomy.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "fnet/error.hpp"

namespace fnet {

SectorTaxonomy::SectorTaxonomy(std::map<std::string, std::string> symbol_to_sector)
    : by_symbol_(std::move(symbol_to_sector)) {}

void SectorTaxonomy::add(const std::string& symbol, const std::string& sector) {
    by_symbol_[symbol] = sector;
}

std::optional<std::string> SectorTaxonomy::sector_of(const std::string& symbol) const {
    if (auto it = by_symbol_.find(symbol); it != by_symbol_.end()) return it->second;
    return std::nullopt;
}

bool SectorTaxonomy::contains_sector(const std::string& sector) const {
    for (const auto& [sym, sec] : by_symbol_) {
        if (sec == sector) return true;
    }
    return false;
}

std::vector<std::string> SectorTaxonomy::sectors() const {
    std::set<std::string> unique;
    for (const auto& [sym, sec] : by_symbol_) unique.insert(sec);
    return {unique.begin(), unique.end()};
}

std::vector<std::string> SectorTaxonomy::symbols() const {
    std::vector<std::string> out;
    out.reserve(by_symbol_.size());
    for (const auto& [sym, sec] : by_symbol_) out.push_back(sym);
    return out;
}

std::vector<std::size_t> SectorTaxonomy::member_indices(
    const std::string& sector, std::span<const std::string> universe) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        auto it = by_symbol_.find(universe[i]);
        if (it != by_symbol_.end() && it->second == sector) out.push_back(i);
    }
    return out;
}

SectorTaxonomy SectorTaxonomy::grouped() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& [sym, sec] : by_symbol_) ++counts[sec];
    SectorTaxonomy out;
    for (const auto& [sym, sec] : by_symbol_) {
        out.add(sym, counts[sec] == 1 ? std::string(kOtherSector) : sec);
    }
    return out;
}

SectorTaxonomy parse_taxonomy(std::istream& input, const std::string& source) {
    SectorTaxonomy taxonomy;
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    while (std::getline(input, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
            if (line != "symbol,sector") {
                throw ParseError(ErrorCode::MalformedRow, source, 0, 0,
                                 "expected header 'symbol,sector'");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        ++row;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(ErrorCode::MalformedRow, source, row, comma == std::string::npos ? 2 : 3,
                             "expected 2 fields");
        }
        std::string symbol = line.substr(0, comma);
        std::string sector = line.substr(comma + 1);
        if (symbol.empty()) throw ParseError(ErrorCode::MalformedRow, source, row, 1, "empty symbol");
        if (sector.empty()) throw ParseError(ErrorCode::MalformedRow, source, row, 2, "empty sector");
        if (taxonomy.sector_of(symbol)) {
            throw ParseError(ErrorCode::MalformedRow, source, row, 1, "duplicate symbol " + symbol);
        }
        taxonomy.add(symbol, sector);
    }
    if (taxonomy.size() == 0) throw ParseError(ErrorCode::EmptyInput, source, 0, 0, "no data rows");
    return taxonomy;
}

SectorTaxonomy read_taxonomy_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return parse_taxonomy(in, path);
}

void write_taxonomy(std::ostream& out, const SectorTaxonomy& taxonomy) {
    out << "symbol,sector\n";
    for (const auto& [sym, sec] : taxonomy.entries()) out << sym << ',' << sec << '\n';
}

}  // namespace fnet
