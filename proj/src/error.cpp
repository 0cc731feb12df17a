// SPDX-License-Identifier: Apache-2.0

#include "provstamp/error.hpp"

namespace provstamp {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::FidelityMismatch: return "FidelityMismatch";
    case ErrorCode::TimestampRegression: return "TimestampRegression";
    case ErrorCode::UnknownTargetVersion: return "UnknownTargetVersion";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::InvalidTimestamp: return "InvalidTimestamp";
    case ErrorCode::ConflictingContext: return "ConflictingContext";
    case ErrorCode::RelativeIri: return "RelativeIri";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnresolvableTerm: return "UnresolvableTerm";
    case ErrorCode::UnknownContext: return "UnknownContext";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::NonFiniteNumber: return "NonFiniteNumber";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptContainer: return "CorruptContainer";
    case ErrorCode::EmptyPayload: return "EmptyPayload";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::IncompleteSegments: return "IncompleteSegments";
    case ErrorCode::BadCompression: return "BadCompression";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

std::string describe_missing(const std::vector<std::size_t>& missing, std::size_t total)
{
    std::string msg = "provenance segments incomplete (expected " + std::to_string(total)
                      + "), missing indices:";
    for (auto idx : missing)
        msg += " " + std::to_string(idx);
    return msg;
}

}  // namespace

IncompleteSegmentsError::IncompleteSegmentsError(std::vector<std::size_t> missing,
                                                 std::size_t expected_total)
    : Error(ErrorCode::IncompleteSegments, describe_missing(missing, expected_total)),
      missing_(std::move(missing)),
      expected_total_(expected_total)
{
}

}  // namespace provstamp
