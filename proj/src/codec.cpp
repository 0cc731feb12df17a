// SPDX-License-Identifier: Apache-2.0

#include "provstamp/codec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace provstamp {

namespace {

using namespace violation;

// ---------------------------------------------------------------------------
// record -> document

JsonDocument scalar_json(const Scalar& s)
{
    return std::visit([](const auto& v) { return JsonDocument(v); }, s);
}

JsonDocument scalar_map_json(const ScalarMap& map)
{
    JsonDocument obj = JsonDocument::object();
    for (const auto& [k, v] : map)
        obj[k] = scalar_json(v);
    return obj;
}

JsonDocument agent_json(const Agent& a)
{
    JsonDocument obj = JsonDocument::object();
    obj["@type"] = std::string(to_string(a.agentType));
    if (a.identifier)
        obj["@id"] = *a.identifier;
    obj["name"] = a.name;
    return obj;
}

JsonDocument criteria_json(const std::vector<CriterionEntry>& list)
{
    JsonDocument arr = JsonDocument::array();
    for (const auto& c : list) {
        JsonDocument obj = JsonDocument::object();
        obj["criterion"] = c.text;
        if (c.agent)
            obj["agent"] = agent_json(*c.agent);
        if (c.date)
            obj["date"] = c.date->to_string();
        arr.push_back(std::move(obj));
    }
    return arr;
}

JsonDocument proportions_json(const std::map<std::string, double>& map)
{
    JsonDocument obj = JsonDocument::object();
    for (const auto& [k, v] : map)
        obj[k] = v;
    return obj;
}

ContextDeclaration output_context(const ProvenanceRecord& r)
{
    auto ctx = default_context(r.generation.has_value());
    for (const auto& entry : r.context.entries) {
        bool is_default_flux = false;
        if (const auto* map = std::get_if<std::map<std::string, std::string>>(&entry))
            is_default_flux = map->size() == 1 && map->begin()->first == "flux"
                              && map->begin()->second == kFluxPrefixIri;
        if (is_default_flux && !r.generation)
            continue;
        if (std::find(ctx.entries.begin(), ctx.entries.end(), entry) == ctx.entries.end())
            ctx.entries.push_back(entry);
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// document -> record

class Reader {
public:
    explicit Reader(ValidationReport& report) : report_(report) {}

    void invalid(const std::string& path, const std::string& message)
    {
        report_.error(std::string(kInvalidValue), message, path);
    }

    void missing(const std::string& path)
    {
        report_.error(std::string(kMissingField),
                      "required field \"" + path + "\" is missing", path);
    }

    static std::string join(const std::string& base, std::string_view key)
    {
        return base.empty() ? std::string(key) : base + "." + std::string(key);
    }

    const JsonDocument* member(const JsonDocument& obj, std::string_view key)
    {
        auto it = obj.find(std::string(key));
        if (it == obj.end() || it->is_null())
            return nullptr;
        return &*it;
    }

    std::optional<std::string> string(const JsonDocument& obj, std::string_view key,
                                      const std::string& base, bool required = false)
    {
        const auto* v = member(obj, key);
        auto path = join(base, key);
        if (!v) {
            if (required)
                missing(path);
            return std::nullopt;
        }
        if (!v->is_string()) {
            invalid(path, "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    std::optional<Timestamp> timestamp(const JsonDocument& obj, std::string_view key,
                                       const std::string& base, bool required = false)
    {
        auto text = string(obj, key, base, required);
        if (!text)
            return std::nullopt;
        auto ts = Timestamp::try_parse(*text);
        if (!ts)
            invalid(join(base, key), "\"" + *text + "\" is not an ISO 8601 UTC timestamp");
        return ts;
    }

    /// Positive integers may arrive as JSON numbers or as digit strings.
    std::optional<std::int64_t> integer(const JsonDocument& obj, std::string_view key,
                                        const std::string& base, bool required = false)
    {
        const auto* v = member(obj, key);
        auto path = join(base, key);
        if (!v) {
            if (required)
                missing(path);
            return std::nullopt;
        }
        if (v->is_number_integer())
            return v->get<std::int64_t>();
        if (v->is_number_float()) {
            double d = v->get<double>();
            if (d == std::trunc(d) && std::fabs(d) < 9.2e18)
                return static_cast<std::int64_t>(d);
        }
        if (v->is_string()) {
            const auto& s = v->get_ref<const std::string&>();
            std::int64_t out = 0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), out);
            if (res.ec == std::errc{} && res.ptr == s.data() + s.size())
                return out;
        }
        invalid(path, "expected an integer");
        return std::nullopt;
    }

    std::optional<Agent> agent(const JsonDocument& v, const std::string& path)
    {
        if (v.is_string())
            return Agent::person(v.get<std::string>());
        if (!v.is_object()) {
            invalid(path, "expected an agent object");
            return std::nullopt;
        }
        Agent a;
        if (auto type = string(v, "@type", path)) {
            auto parsed = agent_type_from_string(*type);
            if (!parsed)
                invalid(join(path, "@type"), "unknown agent type \"" + *type + "\"");
            else
                a.agentType = *parsed;
        }
        a.identifier = string(v, "@id", path);
        a.name = string(v, "name", path, true).value_or("");
        return a;
    }

    std::optional<Agent> agent_at(const JsonDocument& obj, std::string_view key,
                                  const std::string& base, bool required = false)
    {
        const auto* v = member(obj, key);
        if (!v) {
            if (required)
                missing(join(base, key));
            return std::nullopt;
        }
        return agent(*v, join(base, key));
    }

    ScalarMap scalars(const JsonDocument& obj, std::string_view key, const std::string& base)
    {
        ScalarMap out;
        const auto* v = member(obj, key);
        if (!v)
            return out;
        auto path = join(base, key);
        if (!v->is_object()) {
            invalid(path, "expected an object of scalar values");
            return out;
        }
        for (auto it = v->begin(); it != v->end(); ++it) {
            const auto& item = it.value();
            if (item.is_boolean())
                out[it.key()] = item.get<bool>();
            else if (item.is_number_integer())
                out[it.key()] = item.get<std::int64_t>();
            else if (item.is_number())
                out[it.key()] = item.get<double>();
            else if (item.is_string())
                out[it.key()] = item.get<std::string>();
            else
                invalid(join(path, it.key()), "expected a scalar value");
        }
        return out;
    }

    std::map<std::string, double> proportions(const JsonDocument& obj, std::string_view key,
                                              const std::string& base)
    {
        std::map<std::string, double> out;
        const auto* v = member(obj, key);
        if (!v)
            return out;
        auto path = join(base, key);
        if (!v->is_object()) {
            invalid(path, "expected an object of fractions");
            return out;
        }
        for (auto it = v->begin(); it != v->end(); ++it) {
            if (it.value().is_number())
                out[it.key()] = it.value().get<double>();
            else
                invalid(join(path, it.key()), "expected a number");
        }
        return out;
    }

    template <typename Fn>
    void each(const JsonDocument& obj, std::string_view key, const std::string& base, Fn&& fn)
    {
        const auto* v = member(obj, key);
        if (!v)
            return;
        auto path = join(base, key);
        if (!v->is_array()) {
            invalid(path, "expected an array");
            return;
        }
        for (std::size_t i = 0; i < v->size(); ++i)
            fn((*v)[i], path + "[" + std::to_string(i) + "]");
    }

    std::vector<CriterionEntry> criteria(const JsonDocument& obj, std::string_view key)
    {
        std::vector<CriterionEntry> out;
        each(obj, key, "", [&](const JsonDocument& item, const std::string& path) {
            if (!item.is_object()) {
                invalid(path, "expected a criterion object");
                return;
            }
            CriterionEntry c;
            c.text = string(item, "criterion", path, true).value_or("");
            c.agent = agent_at(item, "agent", path);
            c.date = timestamp(item, "date", path);
            out.push_back(std::move(c));
        });
        return out;
    }

    std::optional<TransformationEvent> event(const JsonDocument& item, const std::string& path)
    {
        if (!item.is_object()) {
            invalid(path, "expected a transformation object");
            return std::nullopt;
        }
        TransformationEvent ev;
        if (auto type = string(item, "eventType", path, true)) {
            auto parsed = event_type_from_string(*type);
            if (!parsed)
                invalid(join(path, "eventType"), "unknown event type \"" + *type + "\"");
            else
                ev.eventType = *parsed;
        }
        if (auto a = agent_at(item, "agent", path, true))
            ev.agent = *a;
        if (auto ts = timestamp(item, "timestamp", path, true))
            ev.timestamp = *ts;
        ev.params = scalars(item, "params", path);
        ev.note = string(item, "note", path);
        if (auto under = integer(item, "underRevision", path)) {
            if (*under < 0 || *under > std::numeric_limits<std::uint32_t>::max())
                invalid(join(path, "underRevision"), "expected a non-negative version");
            else
                ev.underRevision = static_cast<std::uint32_t>(*under);
        }
        return ev;
    }

private:
    ValidationReport& report_;
};

std::optional<GenerationParams> read_generation(Reader& in, const JsonDocument& doc)
{
    const auto* params = in.member(doc, "flux:parameters");
    const auto* version = in.member(doc, "flux:version");
    const auto* generator = in.member(doc, "flux:generator");
    if (!params && !version && !generator)
        return std::nullopt;

    GenerationParams g;
    g.generatorName = in.string(doc, "flux:generator", "").value_or("");
    g.generatorVersion = in.string(doc, "flux:version", "", true).value_or("");
    if (!params) {
        in.missing("flux:parameters");
        return g;
    }
    const std::string base = "flux:parameters";
    if (!params->is_object()) {
        in.invalid(base, "expected an object");
        return g;
    }
    g.prompt = in.string(*params, "prompt", base, true).value_or("");
    if (const auto* seed = in.member(*params, "seed")) {
        if (seed->is_string())
            g.seed = seed->get<std::string>();
        else if (seed->is_number_unsigned() || seed->is_number_integer())
            g.seed = seed->dump();
        else
            in.invalid(base + ".seed", "expected a decimal digit string");
    } else {
        in.missing(base + ".seed");
    }
    g.steps = in.integer(*params, "steps", base, true).value_or(0);
    g.sampler = in.string(*params, "sampler", base, true).value_or("");
    g.width = in.integer(*params, "width", base, true).value_or(0);
    g.height = in.integer(*params, "height", base, true).value_or(0);
    g.extra = in.scalars(*params, "extra", base);
    return g;
}

ProvenanceRecord record_from_document(const JsonDocument& doc, ValidationReport& problems)
{
    Reader in(problems);
    ProvenanceRecord r;
    r.recordType = in.string(doc, "@type", "", true).value_or("");
    r.name = in.string(doc, "name", "", true).value_or("");
    r.creator = in.agent_at(doc, "creator", "", true);
    r.methodOfCollection = in.string(doc, "methodOfCollection", "", true).value_or("");
    r.dateCreated = in.timestamp(doc, "dateCreated", "", true);
    r.encodingFormat = in.string(doc, "encodingFormat", "", true).value_or("");
    if (auto f = in.string(doc, "fidelity", "", true)) {
        r.fidelity = fidelity_from_string(*f);
        if (!r.fidelity)
            in.invalid("fidelity", "fidelity must be \"real\" or \"synthetic\"");
    }
    r.source = in.string(doc, "source", "");
    r.captureMetadata = in.scalars(doc, "captureMetadata", "");
    r.generation = read_generation(in, doc);
    r.inclusionCriteria = in.criteria(doc, "inclusionCriteria");
    r.exclusionCriteria = in.criteria(doc, "exclusionCriteria");

    in.each(doc, "requirements", "", [&](const JsonDocument& item, const std::string& path) {
        Requirement req;
        if (item.is_string()) {
            req.description = item.get<std::string>();
        } else if (item.is_object()) {
            req.description = in.string(item, "requirement", path, true).value_or("");
            req.identifier = in.string(item, "identifier", path);
        } else {
            in.invalid(path, "expected a requirement object");
            return;
        }
        r.requirements.push_back(std::move(req));
    });

    in.each(doc, "annotations", "", [&](const JsonDocument& item, const std::string& path) {
        if (!item.is_object()) {
            in.invalid(path, "expected an annotation object");
            return;
        }
        Annotation a;
        a.className = in.string(item, "class", path, true).value_or("");
        if (const auto* box = in.member(item, "bbox")) {
            if (box->is_string()) {
                a.bbox = box->get<std::string>();
            } else if (box->is_array() && box->size() == 4
                       && std::all_of(box->begin(), box->end(),
                                      [](const JsonDocument& v) { return v.is_number(); })) {
                std::array<double, 4> coords{};
                for (std::size_t i = 0; i < 4; ++i)
                    coords[i] = (*box)[i].get<double>();
                a.bbox = coords;
            } else {
                in.invalid(path + ".bbox", "bbox must be [x1, y1, x2, y2] or a placeholder string");
            }
        } else {
            in.missing(path + ".bbox");
        }
        a.annotator = in.agent_at(item, "annotator", path);
        a.dateAnnotated = in.timestamp(item, "dateAnnotated", path);
        a.annotationType = in.string(item, "annotationType", path);
        r.annotations.push_back(std::move(a));
    });

    in.each(doc, "transformations", "", [&](const JsonDocument& item, const std::string& path) {
        if (auto ev = in.event(item, path))
            r.transformations.push_back(std::move(*ev));
    });

    in.each(doc, "revisions", "", [&](const JsonDocument& item, const std::string& path) {
        if (!item.is_object()) {
            in.invalid(path, "expected a revision object");
            return;
        }
        Revision rev;
        auto version = in.integer(item, "version", path, true);
        if (version && (*version < 1 || *version > std::numeric_limits<std::uint32_t>::max()))
            in.invalid(path + ".version", "version must be a positive integer");
        else if (version)
            rev.version = static_cast<std::uint32_t>(*version);
        if (auto action = in.string(item, "action", path, true)) {
            auto parsed = revision_action_from_string(*action);
            if (!parsed)
                in.invalid(path + ".action", "unknown revision action \"" + *action + "\"");
            else
                rev.action = *parsed;
        }
        if (auto target = in.integer(item, "targetVersion", path)) {
            if (*target < 1 || *target > std::numeric_limits<std::uint32_t>::max())
                in.invalid(path + ".targetVersion", "targetVersion must be a positive integer");
            else
                rev.targetVersion = static_cast<std::uint32_t>(*target);
        }
        if (auto a = in.agent_at(item, "agent", path, true))
            rev.agent = *a;
        if (auto ts = in.timestamp(item, "timestamp", path, true))
            rev.timestamp = *ts;
        rev.note = in.string(item, "note", path);
        r.revisions.push_back(std::move(rev));
    });

    if (auto s = in.string(doc, "split", "")) {
        r.split = split_from_string(*s);
        if (!r.split)
            in.invalid("split", "split must be training, validation or testing");
    }

    if (const auto* ds = in.member(doc, "dataset")) {
        if (!ds->is_object()) {
            in.invalid("dataset", "expected an object");
        } else {
            DatasetDescriptor d;
            d.datasetId = in.string(*ds, "datasetId", "dataset");
            d.classProportions = in.proportions(*ds, "classProportions", "dataset");
            d.splitProportions = in.proportions(*ds, "splitProportions", "dataset");
            r.dataset = std::move(d);
        }
    }
    r.contentDigest = in.string(doc, "contentDigest", "");
    return r;
}

/// The context every stored document is re-keyed to before it is read.
const ContextDeclaration& reading_context()
{
    static const ContextDeclaration ctx = default_context(true);
    return ctx;
}

struct Loaded {
    ProvenanceRecord record;
    ValidationReport problems;
    std::vector<std::string> warnings;
};

/// Shared front half of parse / validate_document. Throws for problems
/// that prevent reading the document at all.
Loaded load(std::string_view text, Mode mode, const jsonld::ContextRegistry& registry)
{
    Loaded out;
    auto parsed = parse_json(text, mode);
    for (const auto& dup : parsed.duplicates)
        out.warnings.push_back("DuplicateKey(" + dup + ")");
    const auto& doc = parsed.document;
    if (!doc.is_object())
        throw Error(ErrorCode::SchemaViolation, "provenance document must be a JSON object");
    if (!doc.contains("@context"))
        throw Error(ErrorCode::SchemaViolation, "provenance document has no @context",
                    "@context");

    JsonDocument normalized;
    try {
        normalized = normalize_document(doc, mode, registry, &out.warnings);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UnresolvableTerm)
            throw Error(ErrorCode::UnknownTerm, e.what(), e.detail());
        throw;
    }
    out.record = record_from_document(normalized, out.problems);
    out.record.context = jsonld::declaration_from_json(doc["@context"]);
    return out;
}

}  // namespace

const jsonld::ContextRegistry& default_registry()
{
    static const jsonld::ContextRegistry registry = [] {
        auto r = jsonld::ContextRegistry::with_defaults();
        if (const char* dir = std::getenv("PROVSTAMP_CONTEXT_DIR"); dir && *dir)
            r.load_directory(dir);
        return r;
    }();
    return registry;
}

JsonDocument to_document(const ProvenanceRecord& r)
{
    JsonDocument doc = JsonDocument::object();
    doc["@context"] = jsonld::to_json(output_context(r));
    doc["@type"] = r.recordType;
    doc["name"] = r.name;
    if (r.creator)
        doc["creator"] = agent_json(*r.creator);
    doc["methodOfCollection"] = r.methodOfCollection;
    if (r.dateCreated)
        doc["dateCreated"] = r.dateCreated->to_string();
    doc["encodingFormat"] = r.encodingFormat;
    if (r.fidelity)
        doc["fidelity"] = std::string(to_string(*r.fidelity));
    if (r.source)
        doc["source"] = *r.source;
    if (!r.captureMetadata.empty())
        doc["captureMetadata"] = scalar_map_json(r.captureMetadata);
    if (r.generation) {
        const auto& g = *r.generation;
        if (!g.generatorName.empty())
            doc["flux:generator"] = g.generatorName;
        doc["flux:version"] = g.generatorVersion;
        JsonDocument params = JsonDocument::object();
        params["prompt"] = g.prompt;
        params["seed"] = g.seed;
        params["steps"] = g.steps;
        params["sampler"] = g.sampler;
        params["width"] = g.width;
        params["height"] = g.height;
        if (!g.extra.empty())
            params["extra"] = scalar_map_json(g.extra);
        doc["flux:parameters"] = std::move(params);
    }
    if (!r.inclusionCriteria.empty())
        doc["inclusionCriteria"] = criteria_json(r.inclusionCriteria);
    if (!r.exclusionCriteria.empty())
        doc["exclusionCriteria"] = criteria_json(r.exclusionCriteria);
    if (!r.requirements.empty()) {
        JsonDocument arr = JsonDocument::array();
        for (const auto& req : r.requirements) {
            JsonDocument obj = JsonDocument::object();
            obj["requirement"] = req.description;
            if (req.identifier)
                obj["identifier"] = *req.identifier;
            arr.push_back(std::move(obj));
        }
        doc["requirements"] = std::move(arr);
    }
    if (!r.annotations.empty()) {
        JsonDocument arr = JsonDocument::array();
        for (const auto& a : r.annotations) {
            JsonDocument obj = JsonDocument::object();
            obj["class"] = a.className;
            if (const auto* box = std::get_if<std::array<double, 4>>(&a.bbox))
                obj["bbox"] = JsonDocument::array({(*box)[0], (*box)[1], (*box)[2], (*box)[3]});
            else
                obj["bbox"] = std::get<std::string>(a.bbox);
            if (a.annotationType)
                obj["annotationType"] = *a.annotationType;
            if (a.annotator)
                obj["annotator"] = agent_json(*a.annotator);
            if (a.dateAnnotated)
                obj["dateAnnotated"] = a.dateAnnotated->to_string();
            arr.push_back(std::move(obj));
        }
        doc["annotations"] = std::move(arr);
    }
    if (!r.transformations.empty()) {
        JsonDocument arr = JsonDocument::array();
        for (const auto& ev : r.transformations) {
            JsonDocument obj = JsonDocument::object();
            obj["eventType"] = std::string(to_string(ev.eventType));
            obj["agent"] = agent_json(ev.agent);
            obj["timestamp"] = ev.timestamp.to_string();
            if (!ev.params.empty())
                obj["params"] = scalar_map_json(ev.params);
            if (ev.note)
                obj["note"] = *ev.note;
            if (ev.underRevision != 0)
                obj["underRevision"] = ev.underRevision;
            arr.push_back(std::move(obj));
        }
        doc["transformations"] = std::move(arr);
    }
    if (!r.revisions.empty()) {
        JsonDocument arr = JsonDocument::array();
        for (const auto& rev : r.revisions) {
            JsonDocument obj = JsonDocument::object();
            obj["version"] = rev.version;
            obj["action"] = std::string(to_string(rev.action));
            if (rev.targetVersion)
                obj["targetVersion"] = *rev.targetVersion;
            obj["agent"] = agent_json(rev.agent);
            obj["timestamp"] = rev.timestamp.to_string();
            if (rev.note)
                obj["note"] = *rev.note;
            arr.push_back(std::move(obj));
        }
        doc["revisions"] = std::move(arr);
    }
    if (r.split)
        doc["split"] = std::string(to_string(*r.split));
    if (r.dataset) {
        JsonDocument ds = JsonDocument::object();
        if (r.dataset->datasetId)
            ds["datasetId"] = *r.dataset->datasetId;
        if (!r.dataset->classProportions.empty())
            ds["classProportions"] = proportions_json(r.dataset->classProportions);
        if (!r.dataset->splitProportions.empty())
            ds["splitProportions"] = proportions_json(r.dataset->splitProportions);
        doc["dataset"] = std::move(ds);
    }
    if (r.contentDigest)
        doc["contentDigest"] = *r.contentDigest;
    return doc;
}

std::string serialize(const ProvenanceRecord& record, Style style)
{
    // Out-of-order events are a warning here: a lenient append must still
    // be writable. Everything else is an error.
    auto report = validate_record(record, Mode::lenient);
    if (report.has_errors()) {
        const auto& v = *std::find_if(report.violations.begin(), report.violations.end(),
                                      [](const Violation& x) { return x.severity == Severity::error; });
        throw Error(ErrorCode::InvalidRecord,
                    "refusing to serialize an invalid record: " + v.path + ": " + v.message,
                    v.path);
    }
    auto doc = to_document(record);
    return style == Style::canonical ? canonicalize(doc) : pretty(doc);
}

JsonDocument normalize_document(const JsonDocument& doc, Mode mode,
                                const jsonld::ContextRegistry& registry,
                                std::vector<std::string>* warnings)
{
    auto expanded = jsonld::expand(doc, registry, mode, warnings);
    return jsonld::compact(expanded, reading_context(), registry);
}

ParseResult parse(std::string_view text, Mode mode, const jsonld::ContextRegistry& registry)
{
    auto loaded = load(text, mode, registry);
    if (loaded.problems.has_errors()) {
        const auto& v = loaded.problems.violations.front();
        throw Error(ErrorCode::SchemaViolation, v.path + ": " + v.message, v.path);
    }
    return {std::move(loaded.record), std::move(loaded.warnings)};
}

ValidationReport validate_document(std::string_view text, Mode mode,
                                   const jsonld::ContextRegistry& registry)
{
    ValidationReport report;
    Loaded loaded;
    try {
        loaded = load(text, mode, registry);
    } catch (const Error& e) {
        auto code = e.code() == ErrorCode::UnknownTerm ? std::string(kUnknownTerm)
                    : e.code() == ErrorCode::UnknownContext
                        ? std::string(kContext)
                        : std::string(kParse);
        // MalformedJson carries a byte offset, not a document path.
        report.error(code, std::string(to_string(e.code())) + ": " + e.what(),
                     e.code() == ErrorCode::MalformedJson ? std::string() : e.detail());
        return report;
    }
    for (const auto& w : loaded.warnings)
        report.warning(w.rfind("DuplicateKey", 0) == 0 ? "DUPLICATE_KEY" : std::string(kUnknownTerm),
                       w, "");
    report.violations.insert(report.violations.end(), loaded.problems.violations.begin(),
                             loaded.problems.violations.end());

    // The reader already flagged absent or unreadable fields; keep one
    // violation per field.
    auto invariants = validate_record(loaded.record, mode);
    for (auto& v : invariants.violations) {
        // Record paths name the model field; report the document key instead.
        if (v.path == "generation" || v.path.rfind("generation.", 0) == 0)
            v.path = "flux:parameters" + v.path.substr(10);
        bool duplicate = std::any_of(report.violations.begin(), report.violations.end(),
                                     [&](const Violation& seen) { return seen.path == v.path; });
        bool shadowed = (v.code == kMissingField || v.code == kEmptyValue)
                        && std::any_of(report.violations.begin(), report.violations.end(),
                                       [&](const Violation& seen) {
                                           return v.path == seen.path
                                                  || v.path.rfind(seen.path + ".", 0) == 0;
                                       });
        if (!duplicate && !shadowed)
            report.violations.push_back(std::move(v));
    }
    return report;
}

TransformationEvent parse_event(std::string_view text)
{
    auto doc = parse_json(text, Mode::strict).document;
    if (doc.contains("@context"))
        doc = normalize_document(doc, Mode::strict);
    ValidationReport problems;
    Reader in(problems);
    auto ev = in.event(doc, "event");
    if (problems.has_errors() || !ev) {
        const auto& v = problems.violations.front();
        throw Error(ErrorCode::SchemaViolation, v.path + ": " + v.message, v.path);
    }
    ev->underRevision = 0;
    return *ev;
}

}  // namespace provstamp
