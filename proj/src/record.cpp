// SPDX-License-Identifier: Apache-2.0

#include "provstamp/record.hpp"

#include "provstamp/validation.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace provstamp {

namespace {

template <typename Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<AgentType, 3> kAgentTypes{{
    {AgentType::person, "Person"},
    {AgentType::organization, "Organization"},
    {AgentType::software, "SoftwareApplication"},
}};

constexpr NameTable<Fidelity, 2> kFidelities{{
    {Fidelity::real, "real"},
    {Fidelity::synthetic, "synthetic"},
}};

constexpr NameTable<Split, 3> kSplits{{
    {Split::training, "training"},
    {Split::validation, "validation"},
    {Split::testing, "testing"},
}};

constexpr NameTable<EventType, 8> kEventTypes{{
    {EventType::cleaning, "cleaning"},
    {EventType::denoising, "denoising"},
    {EventType::resizing, "resizing"},
    {EventType::cropping, "cropping"},
    {EventType::normalization, "normalization"},
    {EventType::labeling, "labeling"},
    {EventType::feature_selection, "feature-selection"},
    {EventType::other, "other"},
}};

constexpr NameTable<RevisionAction, 4> kActions{{
    {RevisionAction::add_data, "add-data"},
    {RevisionAction::remove_data, "remove-data"},
    {RevisionAction::modify, "modify"},
    {RevisionAction::revert, "revert"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const NameTable<Enum, N>& table, Enum v) noexcept
{
    for (const auto& [e, name] : table)
        if (e == v)
            return name;
    return {};
}

template <typename Enum, std::size_t N>
std::optional<Enum> value_of(const NameTable<Enum, N>& table, std::string_view s) noexcept
{
    for (const auto& [e, name] : table)
        if (name == s)
            return e;
    return std::nullopt;
}

std::uint32_t current_version(const ProvenanceRecord& record)
{
    std::uint32_t v = 0;
    for (const auto& rev : record.revisions)
        v = std::max(v, rev.version);
    return v;
}

template <typename T>
const T& require(const std::optional<T>& field, std::string_view name)
{
    if (!field)
        throw Error(ErrorCode::MissingField,
                    "required origin field \"" + std::string(name) + "\" is missing",
                    std::string(name));
    return *field;
}

}  // namespace

std::string_view to_string(AgentType v) noexcept { return name_of(kAgentTypes, v); }
std::string_view to_string(Fidelity v) noexcept { return name_of(kFidelities, v); }
std::string_view to_string(Split v) noexcept { return name_of(kSplits, v); }
std::string_view to_string(EventType v) noexcept { return name_of(kEventTypes, v); }
std::string_view to_string(RevisionAction v) noexcept { return name_of(kActions, v); }

std::optional<AgentType> agent_type_from_string(std::string_view s) noexcept
{
    if (auto v = value_of(kAgentTypes, s))
        return v;
    // Lower-case spellings are accepted on the command line.
    if (s == "person")
        return AgentType::person;
    if (s == "organization")
        return AgentType::organization;
    if (s == "software")
        return AgentType::software;
    return std::nullopt;
}

std::optional<Fidelity> fidelity_from_string(std::string_view s) noexcept
{
    return value_of(kFidelities, s);
}

std::optional<Split> split_from_string(std::string_view s) noexcept
{
    return value_of(kSplits, s);
}

std::optional<EventType> event_type_from_string(std::string_view s) noexcept
{
    return value_of(kEventTypes, s);
}

std::optional<RevisionAction> revision_action_from_string(std::string_view s) noexcept
{
    return value_of(kActions, s);
}

ContextDeclaration default_context(bool with_generation)
{
    ContextDeclaration ctx;
    ctx.entries.emplace_back(std::string(kSchemaOrgContext));
    if (with_generation)
        ctx.entries.emplace_back(
            std::map<std::string, std::string>{{"flux", std::string(kFluxPrefixIri)}});
    return ctx;
}

ProvenanceRecord new_record(const Origin& origin)
{
    ProvenanceRecord r;
    r.name = require(origin.name, "name");
    r.creator = require(origin.creator, "creator");
    r.methodOfCollection = require(origin.methodOfCollection, "methodOfCollection");
    r.dateCreated = Timestamp::parse(require(origin.dateCreated, "dateCreated"));
    r.encodingFormat = require(origin.encodingFormat, "encodingFormat");
    r.fidelity = require(origin.fidelity, "fidelity");

    if (*r.fidelity == Fidelity::synthetic && !origin.generation)
        throw Error(ErrorCode::FidelityMismatch,
                    "synthetic records require generation parameters", "generation");
    if (*r.fidelity == Fidelity::real && origin.generation)
        throw Error(ErrorCode::FidelityMismatch,
                    "real records must not carry generation parameters", "generation");

    for (auto [value, field] : {std::pair{&r.name, "name"},
                                std::pair{&r.methodOfCollection, "methodOfCollection"},
                                std::pair{&r.encodingFormat, "encodingFormat"}})
        if (value->empty())
            throw Error(ErrorCode::MissingField,
                        "required origin field \"" + std::string(field) + "\" is empty", field);

    r.source = origin.source;
    r.captureMetadata = origin.captureMetadata;
    r.generation = origin.generation;
    r.inclusionCriteria = origin.inclusionCriteria;
    r.exclusionCriteria = origin.exclusionCriteria;
    r.requirements = origin.requirements;
    r.annotations = origin.annotations;
    r.split = origin.split;
    r.dataset = origin.dataset;
    r.context = default_context(r.generation.has_value());

    auto report = validate_record(r, Mode::strict);
    if (report.has_errors()) {
        const auto& first = *std::find_if(
            report.violations.begin(), report.violations.end(),
            [](const Violation& v) { return v.severity == Severity::error; });
        throw Error(ErrorCode::InvalidRecord, first.path + ": " + first.message, first.path);
    }
    return r;
}

ProvenanceRecord append_transformation(const ProvenanceRecord& record, TransformationEvent event,
                                       Mode mode, std::vector<std::string>* warnings)
{
    if (!record.transformations.empty()
        && event.timestamp < record.transformations.back().timestamp) {
        std::string message = "event timestamp " + event.timestamp.to_string()
                              + " precedes last transformation at "
                              + record.transformations.back().timestamp.to_string();
        if (mode == Mode::strict)
            throw Error(ErrorCode::TimestampRegression, message, "transformations");
        if (warnings)
            warnings->push_back(std::move(message));
    }
    ProvenanceRecord out = record;
    event.underRevision = current_version(record);
    out.transformations.push_back(std::move(event));
    return out;
}

ProvenanceRecord append_revision(const ProvenanceRecord& record, const RevisionRequest& request)
{
    Revision rev;
    rev.action = request.action;
    rev.agent = request.agent;
    rev.note = request.note;
    rev.timestamp = request.timestamp.value_or(Timestamp::now());
    rev.version = current_version(record) + 1;

    if (request.action == RevisionAction::revert) {
        if (!request.targetVersion)
            throw Error(ErrorCode::UnknownTargetVersion, "revert requires a target version");
        auto target = *request.targetVersion;
        bool exists = std::any_of(record.revisions.begin(), record.revisions.end(),
                                  [&](const Revision& r) { return r.version == target; });
        if (!exists)
            throw Error(ErrorCode::UnknownTargetVersion,
                        "no revision with version " + std::to_string(target),
                        std::to_string(target));
        rev.targetVersion = target;
    } else if (request.targetVersion) {
        throw Error(ErrorCode::InvalidRecord, "targetVersion is only valid for revert",
                    "targetVersion");
    }

    ProvenanceRecord out = record;
    out.revisions.push_back(std::move(rev));
    return out;
}

ProvenanceRecord effective_view(const ProvenanceRecord& record)
{
    auto report = validate_record(record, Mode::lenient);
    if (report.has_errors())
        throw Error(ErrorCode::InvalidRecord,
                    "cannot resolve revisions of an invalid record: "
                        + report.violations.front().path + ": "
                        + report.violations.front().message);

    // Each version's state is its base (previous version, or the revert
    // target) followed by the events appended while it was current.
    std::map<std::uint32_t, std::vector<TransformationEvent>> state;
    auto events_under = [&](std::uint32_t version, std::vector<TransformationEvent>& into) {
        for (const auto& ev : record.transformations)
            if (ev.underRevision == version)
                into.push_back(ev);
    };

    auto& initial = state[0];
    events_under(0, initial);
    std::uint32_t previous = 0;
    for (const auto& rev : record.revisions) {
        auto base_version =
            rev.action == RevisionAction::revert ? *rev.targetVersion : previous;
        auto snapshot = state.at(base_version);
        events_under(rev.version, snapshot);
        state[rev.version] = std::move(snapshot);
        previous = rev.version;
    }

    ProvenanceRecord out = record;
    out.transformations = state.at(previous);
    return out;
}

}  // namespace provstamp
