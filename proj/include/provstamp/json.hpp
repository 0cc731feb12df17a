// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/error.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace provstamp {

/// In-memory JSON tree. Member order is insertion order so pretty output
/// keeps the author's layout; canonical output sorts.
using JsonDocument = nlohmann::ordered_json;

struct ParsedJson {
    JsonDocument document;
    /// One entry per duplicate key dropped in lenient mode ("path: key").
    std::vector<std::string> duplicates;
};

/// Parses UTF-8 JSON text. Throws MalformedJson on syntax errors and, in
/// strict mode, DuplicateKey on the first repeated object member. Lenient
/// mode keeps the last occurrence of a repeated key.
ParsedJson parse_json(std::string_view text, Mode mode);

/// RFC 8259 text with members sorted by UTF-16 code units, no
/// insignificant whitespace, and only the escapes JSON requires.
/// Throws NonFiniteNumber for NaN or infinity.
std::string canonicalize(const JsonDocument& doc);

/// Two-space indented output that keeps member order.
std::string pretty(const JsonDocument& doc);

/// Orders two UTF-8 strings by their UTF-16 code-unit sequences.
bool utf16_less(std::string_view a, std::string_view b);

/// True when the doubles/ints compare equal after canonicalization.
bool canonically_equal(const JsonDocument& a, const JsonDocument& b);

}  // namespace provstamp
