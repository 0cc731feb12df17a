// SPDX-License-Identifier: Apache-2.0

#include "provstamp/jsonld.hpp"

#include "bundled_contexts.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace provstamp::jsonld {

namespace {

constexpr std::string_view kJsonType = "@json";

bool is_keyword(std::string_view key) noexcept
{
    return !key.empty() && key.front() == '@';
}

/// A term can serve as a prefix when its IRI ends in a generic delimiter.
bool prefix_capable(const TermDefinition& def) noexcept
{
    if (def.iri.empty() || def.json_literal)
        return false;
    char last = def.iri.back();
    return last == '/' || last == '#' || last == ':' || last == '?' || last == '[' || last == ']'
           || last == '@';
}

bool is_value_object(const JsonDocument& v)
{
    return v.is_object() && v.contains("@value");
}

void check_term_map(const TermMap& terms)
{
    for (const auto& [term, def] : terms) {
        if (term.empty())
            throw Error(ErrorCode::RelativeIri, "context defines an empty term");
        if (!is_absolute_iri(def.iri))
            throw Error(ErrorCode::RelativeIri,
                        "term \"" + term + "\" maps to non-absolute IRI \"" + def.iri + "\"",
                        def.iri);
    }
}

class Expander {
public:
    Expander(const ActiveContext& ctx, Mode mode, std::vector<std::string>* warnings)
        : ctx_(ctx), mode_(mode), warnings_(warnings)
    {
    }

    JsonDocument value(const JsonDocument& v, const std::string& path)
    {
        if (v.is_array()) {
            JsonDocument out = JsonDocument::array();
            for (std::size_t i = 0; i < v.size(); ++i)
                out.push_back(value(v[i], path + "[" + std::to_string(i) + "]"));
            return out;
        }
        if (!v.is_object() || is_value_object(v))
            return v;
        return node(v, path);
    }

    JsonDocument node(const JsonDocument& obj, const std::string& path)
    {
        JsonDocument out = JsonDocument::object();
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            const std::string& key = it.key();
            std::string where = path.empty() ? key : path + "." + key;
            if (is_keyword(key)) {
                if (key == "@type" || key == "@id") {
                    out[key] = it.value();
                    continue;
                }
                if (key == "@context")
                    throw Error(ErrorCode::UnsupportedFeature,
                                "@context is only supported at the top level", where);
                throw Error(ErrorCode::UnsupportedFeature,
                            "JSON-LD keyword " + key + " is outside the supported profile",
                            where);
            }

            auto def = ctx_.expand_key(key);
            std::string target;
            JsonDocument expanded;
            if (!def) {
                if (mode_ == Mode::strict)
                    throw Error(ErrorCode::UnresolvableTerm,
                                "term \"" + key + "\" is not defined by the active context", key);
                if (warnings_)
                    warnings_->push_back("UnknownTerm(" + key + ") at " + where);
                target = key;
                expanded = value(it.value(), where);
            } else if (def->json_literal) {
                target = def->iri;
                expanded = is_value_object(it.value())
                               ? it.value()
                               : JsonDocument{{"@value", it.value()}, {"@type", kJsonType}};
            } else {
                target = def->iri;
                expanded = value(it.value(), where);
            }

            if (out.contains(target))
                throw Error(ErrorCode::UnsupportedFeature,
                            "keys collide after expansion at " + where + " (" + target + ")",
                            target);
            out[target] = std::move(expanded);
        }
        return out;
    }

private:
    const ActiveContext& ctx_;
    Mode mode_;
    std::vector<std::string>* warnings_;
};

class Compactor {
public:
    explicit Compactor(const ActiveContext& ctx) : ctx_(ctx) {}

    JsonDocument value(const JsonDocument& v)
    {
        if (v.is_array()) {
            JsonDocument out = JsonDocument::array();
            for (const auto& item : v)
                out.push_back(value(item));
            return out;
        }
        if (!v.is_object() || is_value_object(v))
            return v;
        JsonDocument out = JsonDocument::object();
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (is_keyword(it.key())) {
                out[it.key()] = it.value();
                continue;
            }
            auto [key, def] = ctx_.compact_iri(it.key());
            const auto& val = it.value();
            if (def.json_literal && is_value_object(val) && val.contains("@type")
                && val["@type"] == kJsonType)
                out[key] = val["@value"];
            else
                out[key] = value(val);
        }
        return out;
    }

private:
    const ActiveContext& ctx_;
};

}  // namespace

bool is_absolute_iri(std::string_view s) noexcept
{
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 >= s.size())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    for (std::size_t i = 1; i < colon; ++i) {
        auto c = static_cast<unsigned char>(s[i]);
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.')
            return false;
    }
    return std::none_of(s.begin(), s.end(),
                        [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

TermMap term_map_from_json(const JsonDocument& object)
{
    if (!object.is_object())
        throw Error(ErrorCode::SchemaViolation, "@context body must be an object");
    TermMap terms;
    for (auto it = object.begin(); it != object.end(); ++it) {
        const auto& v = it.value();
        TermDefinition def;
        if (v.is_string()) {
            def.iri = v.get<std::string>();
        } else if (v.is_object() && v.contains("@id") && v["@id"].is_string()) {
            def.iri = v["@id"].get<std::string>();
            if (v.contains("@type")) {
                if (v["@type"] != kJsonType)
                    throw Error(ErrorCode::UnsupportedFeature,
                                "only \"@type\": \"@json\" term definitions are supported",
                                it.key());
                def.json_literal = true;
            }
        } else {
            throw Error(ErrorCode::UnsupportedFeature,
                        "unsupported definition for term \"" + it.key() + "\"", it.key());
        }
        terms.emplace(it.key(), std::move(def));
    }
    check_term_map(terms);
    return terms;
}

void ContextRegistry::add(const std::string& iri, TermMap terms)
{
    if (!is_absolute_iri(iri))
        throw Error(ErrorCode::RelativeIri, "context IRI \"" + iri + "\" is not absolute", iri);
    check_term_map(terms);
    auto it = contexts_.find(iri);
    if (it != contexts_.end()) {
        if (it->second != terms)
            throw Error(ErrorCode::ConflictingContext,
                        "context \"" + iri + "\" is already registered with different terms",
                        iri);
        return;
    }
    contexts_.emplace(iri, std::move(terms));
}

void ContextRegistry::load_file(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot read context file " + file.string(),
                    file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto doc = parse_json(buf.str(), Mode::strict).document;
    if (!doc.is_object() || !doc.contains("@id") || !doc["@id"].is_string()
        || !doc.contains("@context"))
        throw Error(ErrorCode::SchemaViolation,
                    "context file " + file.string() + " needs \"@id\" and \"@context\"",
                    file.string());
    add(doc["@id"].get<std::string>(), term_map_from_json(doc["@context"]));
}

void ContextRegistry::load_directory(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        auto ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".json" || ext == ".jsonld"))
            files.push_back(entry.path());
    }
    if (ec)
        throw Error(ErrorCode::IoError, "cannot list context directory " + dir.string(),
                    dir.string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
        load_file(f);
}

ContextRegistry ContextRegistry::with_defaults()
{
    ContextRegistry registry;
    for (const auto& [name, body] : detail::bundled_contexts()) {
        auto doc = parse_json(body, Mode::strict).document;
        registry.add(doc.at("@id").get<std::string>(), term_map_from_json(doc.at("@context")));
    }
    return registry;
}

const TermMap* ContextRegistry::find(std::string_view iri) const
{
    auto it = contexts_.find(iri);
    return it == contexts_.end() ? nullptr : &it->second;
}

std::vector<std::string> ContextRegistry::iris() const
{
    std::vector<std::string> out;
    for (const auto& [iri, _] : contexts_)
        out.push_back(iri);
    return out;
}

ContextRegistry register_context(ContextRegistry registry, const std::string& iri, TermMap terms)
{
    registry.add(iri, std::move(terms));
    return registry;
}

void ActiveContext::merge(const TermMap& terms)
{
    for (const auto& [term, def] : terms)
        terms_[term] = def;
}

ActiveContext ActiveContext::from_declaration(const ContextDeclaration& decl,
                                              const ContextRegistry& registry)
{
    ActiveContext ctx;
    for (const auto& entry : decl.entries) {
        if (const auto* iri = std::get_if<std::string>(&entry)) {
            const auto* terms = registry.find(*iri);
            if (!terms)
                throw Error(ErrorCode::UnknownContext,
                            "context \"" + *iri + "\" is not registered", *iri);
            ctx.merge(*terms);
        } else {
            TermMap inline_terms;
            for (const auto& [term, iri] : std::get<std::map<std::string, std::string>>(entry))
                inline_terms.emplace(term, TermDefinition{iri, false});
            check_term_map(inline_terms);
            ctx.merge(inline_terms);
        }
    }
    return ctx;
}

ActiveContext ActiveContext::from_json(const JsonDocument& context_value,
                                       const ContextRegistry& registry)
{
    return from_declaration(declaration_from_json(context_value), registry);
}

std::optional<TermDefinition> ActiveContext::expand_key(std::string_view key) const
{
    if (auto it = terms_.find(std::string(key)); it != terms_.end())
        return it->second;

    auto colon = key.find(':');
    if (colon != std::string_view::npos) {
        auto prefix = key.substr(0, colon);
        auto suffix = key.substr(colon + 1);
        if (suffix.substr(0, 2) != "//") {
            auto it = terms_.find(std::string(prefix));
            if (it != terms_.end() && prefix_capable(it->second))
                return TermDefinition{it->second.iri + std::string(suffix), false};
        }
        if (is_absolute_iri(key))
            return TermDefinition{std::string(key), false};
    }
    return std::nullopt;
}

std::pair<std::string, TermDefinition> ActiveContext::compact_iri(std::string_view iri) const
{
    const std::string* best_term = nullptr;
    const TermDefinition* best_def = nullptr;
    for (const auto& [term, def] : terms_) {
        if (def.iri != iri)
            continue;
        if (!best_term || term.size() < best_term->size())
            best_term = &term, best_def = &def;
    }
    if (best_term)
        return {*best_term, *best_def};

    struct Candidate {
        const std::string* term;
        const TermDefinition* def;
    };
    std::vector<Candidate> prefixes;
    for (const auto& [term, def] : terms_)
        if (prefix_capable(def) && def.iri.size() < iri.size()
            && iri.substr(0, def.iri.size()) == def.iri)
            prefixes.push_back({&term, &def});
    std::sort(prefixes.begin(), prefixes.end(), [](const Candidate& a, const Candidate& b) {
        if (a.def->iri.size() != b.def->iri.size())
            return a.def->iri.size() > b.def->iri.size();
        if (a.def->iri != b.def->iri)
            return a.def->iri < b.def->iri;
        return *a.term < *b.term;
    });
    for (const auto& c : prefixes) {
        std::string suffix(iri.substr(c.def->iri.size()));
        std::string key = *c.term + ":" + suffix;
        if (suffix.substr(0, 2) == "//" || terms_.contains(key))
            continue;
        return {key, TermDefinition{std::string(iri), false}};
    }
    return {std::string(iri), TermDefinition{std::string(iri), false}};
}

JsonDocument to_json(const ContextDeclaration& decl)
{
    auto entry_json = [](const ContextEntry& e) -> JsonDocument {
        if (const auto* iri = std::get_if<std::string>(&e))
            return *iri;
        JsonDocument obj = JsonDocument::object();
        for (const auto& [term, iri] : std::get<std::map<std::string, std::string>>(e))
            obj[term] = iri;
        return obj;
    };
    if (decl.entries.size() == 1)
        return entry_json(decl.entries.front());
    JsonDocument arr = JsonDocument::array();
    for (const auto& e : decl.entries)
        arr.push_back(entry_json(e));
    return arr;
}

ContextDeclaration declaration_from_json(const JsonDocument& value)
{
    ContextDeclaration decl;
    auto add_entry = [&](const JsonDocument& v) {
        if (v.is_string()) {
            auto iri = v.get<std::string>();
            if (!is_absolute_iri(iri))
                throw Error(ErrorCode::RelativeIri,
                            "context reference \"" + iri + "\" is not an absolute IRI", iri);
            decl.entries.emplace_back(std::move(iri));
        } else if (v.is_object()) {
            std::map<std::string, std::string> terms;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!it.value().is_string())
                    throw Error(ErrorCode::UnsupportedFeature,
                                "inline context entries must map a term to an IRI string",
                                it.key());
                if (it.key().empty())
                    throw Error(ErrorCode::RelativeIri, "inline context defines an empty term");
                auto iri = it.value().get<std::string>();
                if (!is_absolute_iri(iri))
                    throw Error(ErrorCode::RelativeIri,
                                "term \"" + it.key() + "\" maps to non-absolute IRI \"" + iri
                                    + "\"",
                                iri);
                terms.emplace(it.key(), std::move(iri));
            }
            decl.entries.emplace_back(std::move(terms));
        } else {
            throw Error(ErrorCode::SchemaViolation,
                        "@context entries must be IRIs or term maps");
        }
    };
    if (value.is_array()) {
        for (const auto& v : value)
            add_entry(v);
    } else {
        add_entry(value);
    }
    return decl;
}

JsonDocument expand(const JsonDocument& doc, const ContextRegistry& registry, Mode mode,
                    std::vector<std::string>* warnings)
{
    if (!doc.is_object())
        throw Error(ErrorCode::SchemaViolation, "a JSON-LD document must be an object");
    ActiveContext ctx;
    if (doc.contains("@context"))
        ctx = ActiveContext::from_json(doc["@context"], registry);

    JsonDocument body = doc;
    body.erase("@context");
    return Expander(ctx, mode, warnings).node(body, "");
}

JsonDocument compact(const JsonDocument& expanded, const ContextDeclaration& context,
                     const ContextRegistry& registry)
{
    auto ctx = ActiveContext::from_declaration(context, registry);
    JsonDocument body = Compactor(ctx).value(expanded);
    JsonDocument out = JsonDocument::object();
    if (!context.entries.empty())
        out["@context"] = to_json(context);
    if (body.is_object())
        for (auto it = body.begin(); it != body.end(); ++it)
            out[it.key()] = it.value();
    return out;
}

}  // namespace provstamp::jsonld
