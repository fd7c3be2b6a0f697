#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fnet {

/// Asset symbol -> sector name.
class SectorTaxonomy {
public:
    /// Name of the catch-all group that single-member sectors collapse into.
    static constexpr const char* kOtherSector = "other";

    SectorTaxonomy() = default;
    explicit SectorTaxonomy(std::map<std::string, std::string> symbol_to_sector);

    void add(const std::string& symbol, const std::string& sector);

    [[nodiscard]] std::optional<std::string> sector_of(const std::string& symbol) const;
    [[nodiscard]] bool contains_sector(const std::string& sector) const;
    /// Sector names in lexicographic order.
    [[nodiscard]] std::vector<std::string> sectors() const;
    /// Symbols in the taxonomy, lexicographic.
    [[nodiscard]] std::vector<std::string> symbols() const;
    /// Indices into `universe` whose symbols belong to `sector`.
    [[nodiscard]] std::vector<std::size_t> member_indices(
        const std::string& sector, std::span<const std::string> universe) const;
    [[nodiscard]] std::size_t size() const noexcept { return by_symbol_.size(); }
    [[nodiscard]] const std::map<std::string, std::string>& entries() const noexcept {
        return by_symbol_;
    }

    /// Copy in which every sector with exactly one member is renamed to "other".
    [[nodiscard]] SectorTaxonomy grouped() const;

private:
    std::map<std::string, std::string> by_symbol_;
};

/// CSV with header `symbol,sector`.
[[nodiscard]] SectorTaxonomy parse_taxonomy(std::istream& input,
                                            const std::string& source = "<input>");
[[nodiscard]] SectorTaxonomy read_taxonomy_file(const std::string& path);
void write_taxonomy(std::ostream& out, const SectorTaxonomy& taxonomy);

}  // namespace fnet
