// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/json.hpp"
#include "provstamp/record.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace provstamp::jsonld {

/// What a term or prefix stands for. `json_literal` marks terms whose
/// values are opaque JSON (the `"@type": "@json"` term definition): their
/// keys are data, not vocabulary, and are never expanded.
struct TermDefinition {
    std::string iri;
    bool json_literal = false;

    friend bool operator==(const TermDefinition&, const TermDefinition&) = default;
};

using TermMap = std::map<std::string, TermDefinition>;

/// Offline map from context IRI to its term definitions. Contexts are never
/// fetched; anything not registered is unknown.
class ContextRegistry {
public:
    /// Empty registry.
    ContextRegistry() = default;

    /// Registry preloaded with the contexts bundled into the library.
    static ContextRegistry with_defaults();

    /// Adds a context. Re-registering an IRI with an identical map is a
    /// no-op; with a different map it throws ConflictingContext. Throws
    /// RelativeIri when the context IRI or any term IRI lacks a scheme.
    void add(const std::string& iri, TermMap terms);

    /// Loads a context file of the form {"@id": IRI, "@context": {...}}.
    void load_file(const std::filesystem::path& file);
    /// Loads every *.json / *.jsonld file in `dir` (sorted by name).
    void load_directory(const std::filesystem::path& dir);

    const TermMap* find(std::string_view iri) const;
    std::vector<std::string> iris() const;

private:
    std::map<std::string, TermMap, std::less<>> contexts_;
};

/// Value-returning form of ContextRegistry::add.
ContextRegistry register_context(ContextRegistry registry, const std::string& iri, TermMap terms);

/// Parses the body of an @context object: term -> IRI string, or term ->
/// {"@id": IRI, "@type": "@json"}.
TermMap term_map_from_json(const JsonDocument& object);

/// True for IRIs with a scheme ("https://…", "urn:…").
bool is_absolute_iri(std::string_view s) noexcept;

/// The merged term definitions a document is interpreted under; later
/// context entries override earlier ones.
class ActiveContext {
public:
    ActiveContext() = default;

    static ActiveContext from_json(const JsonDocument& context_value,
                                   const ContextRegistry& registry);
    static ActiveContext from_declaration(const ContextDeclaration& decl,
                                          const ContextRegistry& registry);

    /// Absolute IRI and literal flag for a document key, or nullopt when
    /// the key is neither a term, a compact IRI with a known prefix, nor an
    /// absolute IRI.
    std::optional<TermDefinition> expand_key(std::string_view key) const;

    /// Shortest key that expands back to `iri`: an exact term (shortest,
    /// then lexicographic), else prefix:suffix via the longest matching
    /// prefix IRI (ties by prefix name), else the IRI itself.
    std::pair<std::string, TermDefinition> compact_iri(std::string_view iri) const;

    const TermMap& terms() const noexcept { return terms_; }

private:
    void merge(const TermMap& terms);

    TermMap terms_;
};

JsonDocument to_json(const ContextDeclaration& decl);
/// Throws RelativeIri / SchemaViolation on malformed declarations.
ContextDeclaration declaration_from_json(const JsonDocument& value);

/// Rewrites every non-keyword key to its absolute IRI and drops @context.
/// Values of JSON-literal terms become {"@value": v, "@type": "@json"}.
/// A document without @context is interpreted under an empty context, so
/// already-expanded documents pass through unchanged.
///
/// Unresolvable keys throw UnresolvableTerm in strict mode; in lenient mode
/// they are kept verbatim and reported in `warnings`.
JsonDocument expand(const JsonDocument& doc, const ContextRegistry& registry,
                    Mode mode = Mode::strict, std::vector<std::string>* warnings = nullptr);

/// Inverse of expand: shortens IRIs under `context` and prepends it as
/// @context. IRIs with no matching term or prefix stay absolute.
JsonDocument compact(const JsonDocument& expanded, const ContextDeclaration& context,
                     const ContextRegistry& registry);

}  // namespace provstamp::jsonld
