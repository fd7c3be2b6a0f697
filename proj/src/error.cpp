#include "fnet/error.hpp"

namespace fnet {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
        case ErrorCode::OhlcInconsistent: return "OhlcInconsistent";
        case ErrorCode::NonDivisibleHorizon: return "NonDivisibleHorizon";
        case ErrorCode::AllMissing: return "AllMissing";
        case ErrorCode::NonPositivePrice: return "NonPositivePrice";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::EmptyPercentileList: return "EmptyPercentileList";
        case ErrorCode::SectorTooSmall: return "SectorTooSmall";
        case ErrorCode::UnknownSector: return "UnknownSector";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TooFewNodes: return "TooFewNodes";
        case ErrorCode::DegenerateReplica: return "DegenerateReplica";
        case ErrorCode::EmptyLinkList: return "EmptyLinkList";
        case ErrorCode::EmptyGroup: return "EmptyGroup";
        case ErrorCode::GroupIsEntireGraph: return "GroupIsEntireGraph";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::EdgelessGraph: return "EdgelessGraph";
        case ErrorCode::InconsistentUniverse: return "InconsistentUniverse";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::MissingData: return "MissingData";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::IncompleteManifest: return "IncompleteManifest";
    }
    return "Unknown";
}

}  // namespace fnet
