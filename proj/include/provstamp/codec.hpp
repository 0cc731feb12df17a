// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/json.hpp"
#include "provstamp/jsonld.hpp"
#include "provstamp/record.hpp"
#include "provstamp/validation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace provstamp {

enum class Style { canonical, pretty };

/// Process-wide registry: bundled contexts plus any directory named by the
/// PROVSTAMP_CONTEXT_DIR environment variable, built on first use.
const jsonld::ContextRegistry& default_registry();

/// Compacted JSON-LD form of the record, members in schema order.
JsonDocument to_document(const ProvenanceRecord& record);

/// Serializes a record that validates without errors (strict). The
/// @context starts with the schema.org context and adds the inline flux
/// prefix when generation parameters are present. Throws InvalidRecord.
std::string serialize(const ProvenanceRecord& record, Style style = Style::canonical);

struct ParseResult {
    ProvenanceRecord record;
    std::vector<std::string> warnings;
};

/// Parses a JSON-LD provenance document.
///
/// Strict mode rejects duplicate keys (DuplicateKey) and keys the @context
/// cannot resolve (UnknownTerm). Lenient mode keeps the last duplicate and
/// reports both cases as warnings. Either mode throws MalformedJson,
/// UnknownContext, and SchemaViolation (missing core fields or ill-typed
/// values).
ParseResult parse(std::string_view text, Mode mode = Mode::strict,
                  const jsonld::ContextRegistry& registry = default_registry());

/// Parses, then validates; never throws for document problems. Parse
/// failures, unknown terms and schema problems become violations alongside
/// the record's own invariant checks.
ValidationReport validate_document(std::string_view text, Mode mode = Mode::strict,
                                   const jsonld::ContextRegistry& registry = default_registry());

/// Re-keys any provenance document to the default record context
/// (expand under its own @context, compact under the default one), so
/// queries see the same keys regardless of how the author compacted it.
JsonDocument normalize_document(const JsonDocument& doc, Mode mode = Mode::lenient,
                                const jsonld::ContextRegistry& registry = default_registry(),
                                std::vector<std::string>* warnings = nullptr);

/// Parses one transformation event in the same shape it takes inside a
/// record's "transformations" list.
TransformationEvent parse_event(std::string_view text);

}  // namespace provstamp
