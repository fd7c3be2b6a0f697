#include "fnet/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fnet/error.hpp"

namespace fnet {

namespace {

constexpr std::string_view kHeader = "timestamp,open,high,low,close,volume";

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool parse_digits(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    const char* first = s.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc() && ptr == first + len;
}

bool parse_double(std::string_view s, double& out) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

void append_number(std::string& out, double value, int precision) {
    char buf[64];
    std::to_chars_result res{};
    if (precision <= 0) {
        res = std::to_chars(buf, buf + sizeof(buf), value);
    } else {
        res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, precision);
    }
    out.append(buf, res.ptr);
}

}  // namespace

std::vector<double> BarSeries::closes() const {
    std::vector<double> out;
    out.reserve(bars.size());
    for (const auto& b : bars) out.push_back(b.close);
    return out;
}

bool BarSeries::contiguous() const noexcept {
    for (std::size_t i = 1; i < bars.size(); ++i) {
        if (bars[i].timestamp - bars[i - 1].timestamp != horizon_s) return false;
    }
    return true;
}

void ReturnPanel::validate() const {
    if (t_len < 2) throw Error(ErrorCode::TooShort, "return panel needs T >= 2");
    if (returns.size() != symbols.size() * t_len) {
        throw Error(ErrorCode::DimensionMismatch, "return matrix size does not match n x T");
    }
    for (std::size_t i = 0; i < returns.size(); ++i) {
        if (!std::isfinite(returns[i])) {
            throw Error(ErrorCode::DegenerateSeries,
                        "non-finite return for " + symbols[i / t_len] + " at index " +
                            std::to_string(i % t_len));
        }
    }
}

Timestamp parse_iso8601(std::string_view text) {
    // YYYY-MM-DDTHH:MM:SS[.fff][Z|+00:00]
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    const bool ok = text.size() >= 19 && parse_digits(text, 0, 4, y) && text[4] == '-' &&
                    parse_digits(text, 5, 2, mo) && text[7] == '-' &&
                    parse_digits(text, 8, 2, d) && (text[10] == 'T' || text[10] == ' ') &&
                    parse_digits(text, 11, 2, h) && text[13] == ':' &&
                    parse_digits(text, 14, 2, mi) && text[16] == ':' &&
                    parse_digits(text, 17, 2, s);
    if (!ok) throw std::invalid_argument("bad ISO-8601 timestamp: " + std::string(text));
    std::string_view rest = text.substr(19);
    if (!rest.empty() && rest.front() == '.') {
        std::size_t k = 1;
        while (k < rest.size() && rest[k] >= '0' && rest[k] <= '9') {
            if (rest[k] != '0') {
                throw std::invalid_argument("sub-second timestamps are not supported: " +
                                            std::string(text));
            }
            ++k;
        }
        rest.remove_prefix(k);
    }
    if (!(rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000")) {
        throw std::invalid_argument("timestamp must be UTC: " + std::string(text));
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 60) {
        throw std::invalid_argument("timestamp out of range: " + std::string(text));
    }
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<Timestamp>(days) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_iso8601(Timestamp ts) {
    using namespace std::chrono;
    const std::int64_t days = floor_div(ts, 86400);
    const std::int64_t secs = ts - days * 86400;
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(secs / 3600), static_cast<int>((secs / 60) % 60),
                  static_cast<int>(secs % 60));
    return buf;
}

BarSeries parse_ohlcv(std::istream& input, std::string symbol, std::int64_t horizon_s,
                      const std::string& source) {
    if (horizon_s <= 0) throw Error(ErrorCode::InvalidSpec, "horizon must be positive");
    BarSeries series{std::move(symbol), horizon_s, {}};

    std::string line;
    bool header_seen = false;
    std::size_t row = 0;
    while (std::getline(input, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            // tolerate a UTF-8 byte order mark
            std::string_view head(line);
            if (head.starts_with("\xEF\xBB\xBF")) head.remove_prefix(3);
            if (head != kHeader) {
                throw ParseError(ErrorCode::MalformedRow, source, 0, 0,
                                 "expected header '" + std::string(kHeader) + "'");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        ++row;
        const auto fields = split_csv(line);
        if (fields.size() != 6) {
            throw ParseError(ErrorCode::MalformedRow, source, row, fields.size() < 6 ? fields.size() + 1 : 7,
                             "expected 6 fields, got " + std::to_string(fields.size()));
        }
        OhlcvBar bar;
        try {
            bar.timestamp = parse_iso8601(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(ErrorCode::MalformedRow, source, row, 1, e.what());
        }
        if (floor_div(bar.timestamp, horizon_s) * horizon_s != bar.timestamp) {
            throw ParseError(ErrorCode::MalformedRow, source, row, 1,
                             "timestamp not aligned to the " + std::to_string(horizon_s) +
                                 " s grid");
        }
        double* targets[5] = {&bar.open, &bar.high, &bar.low, &bar.close, &bar.volume};
        static constexpr const char* names[5] = {"open", "high", "low", "close", "volume"};
        for (std::size_t k = 0; k < 5; ++k) {
            if (!parse_double(fields[k + 1], *targets[k])) {
                throw ParseError(ErrorCode::MalformedRow, source, row, k + 2,
                                 std::string("unparsable ") + names[k] + " '" +
                                     std::string(fields[k + 1]) + "'");
            }
        }
        if (bar.volume < 0.0) {
            throw ParseError(ErrorCode::MalformedRow, source, row, 6, "negative volume");
        }
        if (bar.low > std::min(bar.open, bar.close)) {
            throw ParseError(ErrorCode::OhlcInconsistent, source, row, 4,
                             "low above min(open, close)");
        }
        if (bar.high < std::max(bar.open, bar.close)) {
            throw ParseError(ErrorCode::OhlcInconsistent, source, row, 3,
                             "high below max(open, close)");
        }
        if (!series.bars.empty() && bar.timestamp <= series.bars.back().timestamp) {
            throw ParseError(ErrorCode::NonMonotonicTimestamps, source, row, 1,
                             "timestamp not after previous row");
        }
        series.bars.push_back(bar);
    }
    if (series.bars.empty()) {
        throw ParseError(ErrorCode::EmptyInput, source, 0, 0, "no data rows");
    }
    return series;
}

BarSeries read_ohlcv_file(const std::string& path, std::string symbol, std::int64_t horizon_s) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return parse_ohlcv(in, std::move(symbol), horizon_s, path);
}

void write_ohlcv(std::ostream& out, const BarSeries& series, int precision) {
    std::string text(kHeader);
    text.push_back('\n');
    for (const auto& b : series.bars) {
        text += format_iso8601(b.timestamp);
        for (double v : {b.open, b.high, b.low, b.close, b.volume}) {
            text.push_back(',');
            append_number(text, v, precision);
        }
        text.push_back('\n');
    }
    out << text;
}

BarSeries resample(const BarSeries& series, std::int64_t target_horizon_s) {
    if (series.horizon_s <= 0 || target_horizon_s <= 0 ||
        target_horizon_s % series.horizon_s != 0) {
        throw Error(ErrorCode::NonDivisibleHorizon,
                    std::to_string(target_horizon_s) + " s is not a multiple of " +
                        std::to_string(series.horizon_s) + " s");
    }
    BarSeries out{series.symbol, target_horizon_s, {}};
    for (const auto& b : series.bars) {
        const Timestamp bin = floor_div(b.timestamp, target_horizon_s) * target_horizon_s;
        if (out.bars.empty() || out.bars.back().timestamp != bin) {
            out.bars.push_back(OhlcvBar{bin, b.open, b.high, b.low, b.close, b.volume});
            continue;
        }
        auto& agg = out.bars.back();
        agg.high = std::max(agg.high, b.high);
        agg.low = std::min(agg.low, b.low);
        agg.close = b.close;
        agg.volume += b.volume;
    }
    return out;
}

GapFillResult fill_gaps(const BarSeries& series) {
    if (series.bars.empty()) throw Error(ErrorCode::AllMissing, series.symbol + ": no valid bar");
    GapFillResult result{BarSeries{series.symbol, series.horizon_s, {}}, 0};
    auto& bars = result.series.bars;
    bars.reserve(static_cast<std::size_t>(
        (series.bars.back().timestamp - series.bars.front().timestamp) / series.horizon_s + 1));
    bars.push_back(series.bars.front());
    for (std::size_t k = 1; k < series.bars.size(); ++k) {
        const OhlcvBar& prev = series.bars[k - 1];
        const OhlcvBar& next = series.bars[k];
        for (Timestamp t = prev.timestamp + series.horizon_s; t < next.timestamp;
             t += series.horizon_s) {
            // equidistant slots take the earlier bar
            const double price =
                (t - prev.timestamp) <= (next.timestamp - t) ? prev.close : next.close;
            bars.push_back(OhlcvBar{t, price, price, price, price, 0.0});
            ++result.filled;
        }
        bars.push_back(next);
    }
    return result;
}

std::vector<double> log_returns(std::span<const double> closes) {
    if (closes.size() < 2) throw Error(ErrorCode::TooShort, "need at least 2 prices");
    for (std::size_t i = 0; i < closes.size(); ++i) {
        if (!(closes[i] > 0.0) || !std::isfinite(closes[i])) {
            throw Error(ErrorCode::NonPositivePrice, "price at index " + std::to_string(i) +
                                                         " is not strictly positive");
        }
    }
    std::vector<double> out(closes.size() - 1);
    double prev = std::log(closes[0]);
    for (std::size_t i = 1; i < closes.size(); ++i) {
        const double cur = std::log(closes[i]);
        out[i - 1] = cur - prev;
        prev = cur;
    }
    return out;
}

ReturnPanel build_return_panel(std::span<const BarSeries> series) {
    if (series.empty()) throw Error(ErrorCode::EmptyInput, "no series");
    const std::int64_t horizon = series.front().horizon_s;
    Timestamp start = series.front().bars.empty() ? 0 : series.front().bars.front().timestamp;
    Timestamp end = series.front().bars.empty() ? 0 : series.front().bars.back().timestamp;
    for (const auto& s : series) {
        if (s.horizon_s != horizon) {
            throw Error(ErrorCode::DimensionMismatch, s.symbol + ": horizon differs");
        }
        if (s.bars.empty()) throw Error(ErrorCode::AllMissing, s.symbol + ": no bars");
        if (!s.contiguous()) {
            throw Error(ErrorCode::MissingData, s.symbol + ": series has gaps; fill first");
        }
        start = std::max(start, s.bars.front().timestamp);
        end = std::min(end, s.bars.back().timestamp);
    }
    if (end <= start) {
        throw Error(ErrorCode::TooShort, "series do not overlap on at least two bins");
    }
    const auto n_prices = static_cast<std::size_t>((end - start) / horizon + 1);

    ReturnPanel panel;
    panel.horizon_s = horizon;
    panel.t_len = n_prices - 1;
    panel.returns.reserve(series.size() * panel.t_len);
    for (const auto& s : series) {
        panel.symbols.push_back(s.symbol);
        const auto offset = static_cast<std::size_t>((start - s.bars.front().timestamp) / horizon);
        std::vector<double> closes(n_prices);
        for (std::size_t k = 0; k < n_prices; ++k) closes[k] = s.bars[offset + k].close;
        std::vector<double> r;
        try {
            r = log_returns(closes);
        } catch (const Error& e) {
            throw Error(e.code(), s.symbol + ": " + e.message());
        }
        panel.returns.insert(panel.returns.end(), r.begin(), r.end());
    }
    panel.timestamps.resize(panel.t_len);
    for (std::size_t k = 0; k < panel.t_len; ++k) {
        panel.timestamps[k] = start + static_cast<Timestamp>(k + 1) * horizon;
    }
    return panel;
}

}  // namespace fnet
