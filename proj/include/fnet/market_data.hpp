#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fnet {

/// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

/// One time bin. `timestamp` is the bin start.
struct OhlcvBar {
    Timestamp timestamp = 0;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;

    friend bool operator==(const OhlcvBar&, const OhlcvBar&) = default;
};

/// Time-ordered bars of one asset at one horizon. Slots missing from `bars`
/// are gaps; fill_gaps() makes the grid contiguous.
struct BarSeries {
    std::string symbol;
    std::int64_t horizon_s = 0;
    std::vector<OhlcvBar> bars;

    [[nodiscard]] std::vector<double> closes() const;
    [[nodiscard]] bool contiguous() const noexcept;
};

struct GapFillResult {
    BarSeries series;
    std::size_t filled = 0;
};

/// n x T log-returns, row-major: row i is asset `symbols[i]`.
struct ReturnPanel {
    std::int64_t horizon_s = 0;
    std::vector<std::string> symbols;
    std::size_t t_len = 0;
    std::vector<double> returns;
    /// Start of the bin each return ends in; empty when not tracked.
    std::vector<Timestamp> timestamps;

    [[nodiscard]] std::size_t n() const noexcept { return symbols.size(); }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {returns.data() + i * t_len, t_len};
    }
    [[nodiscard]] std::span<double> row(std::size_t i) {
        return {returns.data() + i * t_len, t_len};
    }

    /// Throws InsufficientSamples / DegenerateSeries style errors when the
    /// shape or finiteness invariants do not hold.
    void validate() const;
};

/// "2021-01-01T00:00:00Z" (also accepts "+00:00" or no zone designator).
[[nodiscard]] Timestamp parse_iso8601(std::string_view text);
[[nodiscard]] std::string format_iso8601(Timestamp ts);

/// Reads `timestamp,open,high,low,close,volume` CSV (LF or CRLF). `source` names
/// the input in error messages.
[[nodiscard]] BarSeries parse_ohlcv(std::istream& input, std::string symbol,
                                    std::int64_t horizon_s, const std::string& source = "<input>");
[[nodiscard]] BarSeries read_ohlcv_file(const std::string& path, std::string symbol,
                                        std::int64_t horizon_s);

/// Writes the same CSV layout parse_ohlcv reads. precision 0 means shortest
/// round-trip representation.
void write_ohlcv(std::ostream& out, const BarSeries& series, int precision = 0);

/// Aggregates to a coarser grid anchored at the epoch. Target bins with no
/// source bar are left out (gaps).
[[nodiscard]] BarSeries resample(const BarSeries& series, std::int64_t target_horizon_s);

/// Fills every missing grid slot from the nearest valid bar in time; ties go to
/// the earlier bar. Filled bars are flat at that close with zero volume.
[[nodiscard]] GapFillResult fill_gaps(const BarSeries& series);

/// ln p(t) - ln p(t-1) over consecutive entries.
[[nodiscard]] std::vector<double> log_returns(std::span<const double> closes);

/// Synchronizes gap-free series onto their common time range and differences
/// the log closes. All series must share the horizon.
[[nodiscard]] ReturnPanel build_return_panel(std::span<const BarSeries> series);

}  // namespace fnet
