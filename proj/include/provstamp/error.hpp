// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace provstamp {

enum class ErrorCode {
    MissingField,
    FidelityMismatch,
    TimestampRegression,
    UnknownTargetVersion,
    InvalidRecord,
    InvalidTimestamp,
    ConflictingContext,
    RelativeIri,
    MalformedJson,
    DuplicateKey,
    UnknownTerm,
    SchemaViolation,
    UnresolvableTerm,
    UnknownContext,
    UnsupportedFeature,
    NonFiniteNumber,
    UnsupportedFormat,
    CorruptContainer,
    EmptyPayload,
    PayloadTooLarge,
    IncompleteSegments,
    BadCompression,
    SyntaxError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `detail()` carries the offending
/// field name, term, or path when one exists.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string detail = {})
        : std::runtime_error(message), code_(code), detail_(std::move(detail))
    {
    }

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

/// JPEG provenance segments that do not form a complete 0..N-1 set.
class IncompleteSegmentsError : public Error {
public:
    IncompleteSegmentsError(std::vector<std::size_t> missing, std::size_t expected_total);

    const std::vector<std::size_t>& missing() const noexcept { return missing_; }
    std::size_t expected_total() const noexcept { return expected_total_; }

private:
    std::vector<std::size_t> missing_;
    std::size_t expected_total_;
};

enum class Mode { strict, lenient };

}  // namespace provstamp
