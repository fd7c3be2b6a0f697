#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "fnet/error.hpp"
#include "fnet/market_data.hpp"

using namespace fnet;
using Catch::Approx;

namespace {

const char* kHeader = "timestamp,open,high,low,close,volume\n";

BarSeries parse(const std::string& body, std::int64_t h = 15) {
    std::istringstream in(std::string(kHeader) + body);
    return parse_ohlcv(in, "X", h, "x.csv");
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::IoError;
}

BarSeries flat_series(std::vector<Timestamp> ts, std::vector<double> closes, std::int64_t h = 15) {
    BarSeries s{"X", h, {}};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        s.bars.push_back(OhlcvBar{ts[i], closes[i], closes[i], closes[i], closes[i], 1.0});
    }
    return s;
}

}  // namespace

TEST_CASE("parse maps fields of a single row") {
    const auto s = parse("2021-01-01T00:00:00Z,100,101,99,100.5,12.5\n");
    REQUIRE(s.bars.size() == 1);
    CHECK(s.bars[0].timestamp == 1609459200);
    CHECK(s.bars[0].open == 100.0);
    CHECK(s.bars[0].high == 101.0);
    CHECK(s.bars[0].low == 99.0);
    CHECK(s.bars[0].close == 100.5);
    CHECK(s.bars[0].volume == 12.5);
}

TEST_CASE("parse accepts CRLF and a byte order mark") {
    std::istringstream in("\xEF\xBB\xBFtimestamp,open,high,low,close,volume\r\n"
                          "2021-01-01T00:00:15Z,1,2,0.5,1.5,3\r\n");
    const auto s = parse_ohlcv(in, "X", 15);
    REQUIRE(s.bars.size() == 1);
    CHECK(s.bars[0].close == 1.5);
}

TEST_CASE("parse errors") {
    CHECK(code_of([] { (void)parse(""); }) == ErrorCode::EmptyInput);
    CHECK(code_of([] {
              (void)parse("2021-01-01T00:00:00Z,1,1,1,1,1\n2021-01-01T00:00:00Z,1,1,1,1,1\n");
          }) == ErrorCode::NonMonotonicTimestamps);
    CHECK(code_of([] { (void)parse("2021-01-01T00:00:00Z,1,0.9,0.8,1,1\n"); }) ==
          ErrorCode::OhlcInconsistent);
    CHECK(code_of([] { (void)parse("2021-01-01T00:00:00Z,1,2,0.5,1,-1\n"); }) == ErrorCode::MalformedRow);
    CHECK(code_of([] {
              std::istringstream in("time,open,high,low,close,volume\n");
              (void)parse_ohlcv(in, "X", 15);
          }) == ErrorCode::MalformedRow);
}

TEST_CASE("parse errors carry row and column") {
    try {
        (void)parse("2021-01-01T00:00:00Z,1,2,0.5,1,1\n2021-01-01T00:00:15Z,1,abc,0.5,1,1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.code() == ErrorCode::MalformedRow);
        CHECK(e.file() == "x.csv");
        CHECK(e.row() == 2);
        CHECK(e.column() == 3);
    }
}

TEST_CASE("iso8601 round trip") {
    CHECK(parse_iso8601("2021-01-01T00:00:00Z") == 1609459200);
    CHECK(parse_iso8601("2021-01-01T00:00:00+00:00") == 1609459200);
    CHECK(format_iso8601(1609459215) == "2021-01-01T00:00:15Z");
    CHECK(parse_iso8601(format_iso8601(1700000000)) == 1700000000);
}

TEST_CASE("resample aggregates OHLCV") {
    BarSeries s{"X", 15, {}};
    const double highs[] = {5, 9, 6, 7};
    for (int k = 0; k < 4; ++k) {
        const double c = k + 1;
        s.bars.push_back(OhlcvBar{k * 15, c - 0.5, highs[k], 0.1 * (k + 1), c, 1.0});
    }
    const auto r = resample(s, 60);
    REQUIRE(r.bars.size() == 1);
    CHECK(r.bars[0].timestamp == 0);
    CHECK(r.bars[0].open == 0.5);
    CHECK(r.bars[0].close == 4.0);
    CHECK(r.bars[0].high == 9.0);
    CHECK(r.bars[0].low == Approx(0.1));
    CHECK(r.bars[0].volume == 4.0);

    const auto same = resample(flat_series({0}, {3.0}), 15);
    CHECK(same.bars == flat_series({0}, {3.0}).bars);

    CHECK(code_of([&] { (void)resample(s, 50); }) == ErrorCode::NonDivisibleHorizon);
}

TEST_CASE("resample leaves empty target bins out") {
    const auto s = flat_series({0, 15, 120, 135}, {1, 2, 3, 4});
    const auto r = resample(s, 60);
    REQUIRE(r.bars.size() == 2);
    CHECK(r.bars[0].timestamp == 0);
    CHECK(r.bars[1].timestamp == 120);
    CHECK_FALSE(r.contiguous());
}

TEST_CASE("fill_gaps uses the nearest bar, earlier on ties") {
    auto tie = fill_gaps(flat_series({0, 30}, {1.0, 2.0}));
    REQUIRE(tie.series.bars.size() == 3);
    CHECK(tie.filled == 1);
    CHECK(tie.series.bars[1].timestamp == 15);
    CHECK(tie.series.bars[1].close == 1.0);
    CHECK(tie.series.bars[1].volume == 0.0);
    CHECK(tie.series.bars[1].open == 1.0);

    auto nearest = fill_gaps(flat_series({0, 60}, {1.0, 2.0}));
    REQUIRE(nearest.series.bars.size() == 5);
    CHECK(nearest.series.bars[1].close == 1.0);
    CHECK(nearest.series.bars[2].close == 1.0);
    CHECK(nearest.series.bars[3].close == 2.0);

    auto complete = fill_gaps(flat_series({0, 15, 30}, {1, 2, 3}));
    CHECK(complete.filled == 0);
    CHECK(complete.series.bars == flat_series({0, 15, 30}, {1, 2, 3}).bars);

    CHECK(code_of([] { (void)fill_gaps(BarSeries{"X", 15, {}}); }) == ErrorCode::AllMissing);
}

TEST_CASE("log returns") {
    const std::vector<double> a{100, 100};
    CHECK(log_returns(a) == std::vector<double>{0.0});
    const std::vector<double> b{100, 100 * std::exp(1.0)};
    CHECK(log_returns(b)[0] == Approx(1.0).epsilon(1e-15));
    const std::vector<double> c{1, 2, 4};
    const auto r = log_returns(c);
    CHECK(r[0] == Approx(std::log(2.0)));
    CHECK(r[1] == Approx(std::log(2.0)));
    const std::vector<double> bad{1, 0};
    CHECK(code_of([&] { (void)log_returns(bad); }) == ErrorCode::NonPositivePrice);
    const std::vector<double> one{1};
    CHECK(code_of([&] { (void)log_returns(one); }) == ErrorCode::TooShort);
}

TEST_CASE("return panel uses the common range") {
    std::vector<BarSeries> s{flat_series({0, 15, 30, 45}, {1, 2, 4, 8}),
                             flat_series({15, 30, 45, 60}, {1, 1, 1, 2})};
    s[1].symbol = "Y";
    const auto p = build_return_panel(s);
    REQUIRE(p.t_len == 2);
    CHECK(p.row(0)[0] == Approx(std::log(2.0)));
    CHECK(p.row(1)[1] == 0.0);
    CHECK(p.timestamps == std::vector<Timestamp>{30, 45});

    std::vector<BarSeries> gappy{flat_series({0, 30}, {1, 2})};
    CHECK(code_of([&] { (void)build_return_panel(gappy); }) == ErrorCode::MissingData);

    std::vector<BarSeries> zero{flat_series({0, 15}, {1, 1}), flat_series({0, 15}, {1, 0})};
    zero[1].symbol = "Z";
    try {
        (void)build_return_panel(zero);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositivePrice);
        CHECK(std::string(e.what()).starts_with("NonPositivePrice: Z: price"));
    }
}

TEST_CASE("write then parse round trips") {
    BarSeries s{"X", 15, {}};
    double p = 100.0;
    for (int k = 0; k < 50; ++k) {
        const double c = p * (1.0 + 0.001 * std::sin(k * 1.3));
        s.bars.push_back(OhlcvBar{1609459200 + 15 * k, p, std::max(p, c) + 0.01, std::min(p, c) - 0.01, c,
                                  k * 0.37});
        p = c;
    }
    std::ostringstream out;
    write_ohlcv(out, s);
    std::istringstream in(out.str());
    CHECK(parse_ohlcv(in, "X", 15).bars == s.bars);
}
