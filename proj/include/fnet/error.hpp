#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace fnet {

/// Every failure the library raises carries one of these codes.
enum class ErrorCode {
    // market data
    EmptyInput,
    MalformedRow,
    NonMonotonicTimestamps,
    OhlcInconsistent,
    NonDivisibleHorizon,
    AllMissing,
    NonPositivePrice,
    TooShort,
    InsufficientSamples,
    DegenerateSeries,
    // correlation
    ZeroVariance,
    TooFewSamples,
    EmptyPercentileList,
    SectorTooSmall,
    UnknownSector,
    // filtering
    DimensionMismatch,
    TooFewNodes,
    // validation
    DegenerateReplica,
    EmptyLinkList,
    // analysis
    EmptyGroup,
    GroupIsEntireGraph,
    Disconnected,
    EdgelessGraph,
    InconsistentUniverse,
    // synth
    InvalidSpec,
    // pipeline
    ConfigError,
    MissingData,
    IoError,
    IncompleteManifest,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    /// what() without the code prefix.
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

/// Parse failure with a source location. Rows count data rows from 1 (header excluded),
/// columns count fields from 1; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::string file, std::size_t row, std::size_t column,
               const std::string& detail)
        : Error(code, file + ":" + std::to_string(row) + ":" + std::to_string(column) + ": " +
                          detail),
          file_(std::move(file)),
          row_(row),
          column_(column) {}

    [[nodiscard]] const std::string& file() const noexcept { return file_; }
    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::string file_;
    std::size_t row_;
    std::size_t column_;
};

}  // namespace fnet
