// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/error.hpp"
#include "provstamp/record.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace provstamp {

enum class Severity { error, warning };

std::string_view to_string(Severity s) noexcept;

struct Violation {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    std::string path;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const noexcept { return violations.empty(); }
    std::size_t error_count() const noexcept;
    std::size_t warning_count() const noexcept;
    bool has_errors() const noexcept { return error_count() > 0; }

    void error(std::string code, std::string message, std::string path);
    void warning(std::string code, std::string message, std::string path);
};

// Violation codes.
namespace violation {
inline constexpr std::string_view kMissingField = "MISSING_FIELD";
inline constexpr std::string_view kEmptyValue = "EMPTY_VALUE";
inline constexpr std::string_view kFidelityMismatch = "FIDELITY_MISMATCH";
inline constexpr std::string_view kInvalidValue = "INVALID_VALUE";
inline constexpr std::string_view kInvalidBbox = "INVALID_BBOX";
inline constexpr std::string_view kTimestampRegression = "TIMESTAMP_REGRESSION";
inline constexpr std::string_view kVersionSequence = "VERSION_SEQUENCE";
inline constexpr std::string_view kRevertTarget = "REVERT_TARGET";
inline constexpr std::string_view kRevisionAttribution = "REVISION_ATTRIBUTION";
inline constexpr std::string_view kProportionSum = "PROPORTION_SUM";
inline constexpr std::string_view kProportionRange = "PROPORTION_RANGE";
inline constexpr std::string_view kDigestFormat = "DIGEST_FORMAT";
inline constexpr std::string_view kContext = "CONTEXT";
inline constexpr std::string_view kParse = "PARSE_ERROR";
inline constexpr std::string_view kUnknownTerm = "UNKNOWN_TERM";
}  // namespace violation

/// Checks every invariant of the record and its contained values. Ordering
/// problems are warnings in lenient mode and errors in strict mode.
ValidationReport validate_record(const ProvenanceRecord& record, Mode mode = Mode::strict);

bool is_valid_digest(std::string_view digest) noexcept;

}  // namespace provstamp
