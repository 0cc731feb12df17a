// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/error.hpp"
#include "provstamp/timestamp.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace provstamp {

/// Scalar values allowed in free-form parameter maps.
using Scalar = std::variant<bool, std::int64_t, double, std::string>;
using ScalarMap = std::map<std::string, Scalar>;

enum class AgentType { person, organization, software };
enum class Fidelity { real, synthetic };
enum class Split { training, validation, testing };
enum class EventType {
    cleaning,
    denoising,
    resizing,
    cropping,
    normalization,
    labeling,
    feature_selection,
    other,
};
enum class RevisionAction { add_data, remove_data, modify, revert };

std::string_view to_string(AgentType v) noexcept;
std::string_view to_string(Fidelity v) noexcept;
std::string_view to_string(Split v) noexcept;
std::string_view to_string(EventType v) noexcept;
std::string_view to_string(RevisionAction v) noexcept;

std::optional<AgentType> agent_type_from_string(std::string_view s) noexcept;
std::optional<Fidelity> fidelity_from_string(std::string_view s) noexcept;
std::optional<Split> split_from_string(std::string_view s) noexcept;
std::optional<EventType> event_type_from_string(std::string_view s) noexcept;
std::optional<RevisionAction> revision_action_from_string(std::string_view s) noexcept;

/// One entry of an @context declaration: either a context IRI or an inline
/// term map (term -> IRI).
using ContextEntry = std::variant<std::string, std::map<std::string, std::string>>;

struct ContextDeclaration {
    std::vector<ContextEntry> entries;

    friend bool operator==(const ContextDeclaration&, const ContextDeclaration&) = default;
};

struct Agent {
    AgentType agentType = AgentType::person;
    std::string name;
    std::optional<std::string> identifier;

    static Agent person(std::string name) { return {AgentType::person, std::move(name), {}}; }

    friend bool operator==(const Agent&, const Agent&) = default;
};

struct GenerationParams {
    std::string generatorName;
    std::string generatorVersion;
    std::string prompt;
    std::string seed;
    std::int64_t steps = 0;
    std::string sampler;
    std::int64_t width = 0;
    std::int64_t height = 0;
    ScalarMap extra;

    friend bool operator==(const GenerationParams&, const GenerationParams&) = default;
};

struct Requirement {
    std::string description;
    std::optional<std::string> identifier;

    friend bool operator==(const Requirement&, const Requirement&) = default;
};

/// Pixel box [x1, y1, x2, y2], or a verbatim placeholder string for records
/// that carry a template instead of coordinates.
using BoundingBox = std::variant<std::array<double, 4>, std::string>;

struct Annotation {
    std::string className;
    BoundingBox bbox = std::array<double, 4>{0, 0, 0, 0};
    std::optional<Agent> annotator;
    std::optional<Timestamp> dateAnnotated;
    std::optional<std::string> annotationType;

    friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct CriterionEntry {
    std::string text;
    std::optional<Agent> agent;
    std::optional<Timestamp> date;

    friend bool operator==(const CriterionEntry&, const CriterionEntry&) = default;
};

struct TransformationEvent {
    EventType eventType = EventType::other;
    Agent agent;
    Timestamp timestamp;
    ScalarMap params;
    std::optional<std::string> note;
    /// Revision version that was current when the event was appended
    /// (0 = before any revision). Set by append_transformation.
    std::uint32_t underRevision = 0;

    friend bool operator==(const TransformationEvent&, const TransformationEvent&) = default;
};

struct Revision {
    std::uint32_t version = 0;
    RevisionAction action = RevisionAction::add_data;
    std::optional<std::uint32_t> targetVersion;
    Agent agent;
    Timestamp timestamp;
    std::optional<std::string> note;

    friend bool operator==(const Revision&, const Revision&) = default;
};

struct DatasetDescriptor {
    std::optional<std::string> datasetId;
    std::map<std::string, double> classProportions;
    std::map<std::string, double> splitProportions;

    friend bool operator==(const DatasetDescriptor&, const DatasetDescriptor&) = default;
};

/// Per-image provenance. Core origin fields are optional here only so that
/// an incomplete document can be represented and reported on; a record
/// produced by new_record always has them.
struct ProvenanceRecord {
    ContextDeclaration context;
    std::string recordType = "ImageObject";
    std::string name;
    std::optional<Agent> creator;
    std::string methodOfCollection;
    std::optional<Timestamp> dateCreated;
    std::string encodingFormat;
    std::optional<Fidelity> fidelity;
    std::optional<std::string> source;
    ScalarMap captureMetadata;
    std::optional<GenerationParams> generation;
    std::vector<CriterionEntry> inclusionCriteria;
    std::vector<CriterionEntry> exclusionCriteria;
    std::vector<Requirement> requirements;
    std::vector<Annotation> annotations;
    std::vector<TransformationEvent> transformations;
    std::vector<Revision> revisions;
    std::optional<Split> split;
    std::optional<DatasetDescriptor> dataset;
    std::optional<std::string> contentDigest;

    friend bool operator==(const ProvenanceRecord&, const ProvenanceRecord&) = default;
};

/// Origin fields supplied when a record is first created.
struct Origin {
    std::optional<std::string> name;
    std::optional<Agent> creator;
    std::optional<std::string> methodOfCollection;
    std::optional<std::string> dateCreated;
    std::optional<std::string> encodingFormat;
    std::optional<Fidelity> fidelity;
    std::optional<std::string> source;
    ScalarMap captureMetadata;
    std::optional<GenerationParams> generation;
    std::vector<CriterionEntry> inclusionCriteria;
    std::vector<CriterionEntry> exclusionCriteria;
    std::vector<Requirement> requirements;
    std::vector<Annotation> annotations;
    std::optional<Split> split;
    std::optional<DatasetDescriptor> dataset;
};

/// Request for append_revision; version and timestamp default are filled in.
struct RevisionRequest {
    RevisionAction action = RevisionAction::add_data;
    std::optional<std::uint32_t> targetVersion;
    Agent agent;
    std::optional<Timestamp> timestamp;
    std::optional<std::string> note;
};

/// Context IRI of the bundled schema.org term subset.
inline constexpr std::string_view kSchemaOrgContext = "https://schema.org";
/// Prefix IRI bound to "flux" for generation parameters.
inline constexpr std::string_view kFluxPrefixIri = "https://example.org/flux#";

/// "https://schema.org", plus {"flux": ...} when the record is synthetic.
ContextDeclaration default_context(bool with_generation);

/// Builds a record from origin fields. Throws MissingField for the first
/// absent core field (name, creator, methodOfCollection, dateCreated,
/// encodingFormat, fidelity) and FidelityMismatch when synthetic without
/// generation parameters or real with them.
ProvenanceRecord new_record(const Origin& origin);

/// Returns a copy with `event` appended and attributed to the current
/// revision. Strict mode throws TimestampRegression when the event is older
/// than the last one; lenient mode appends and reports a warning instead.
ProvenanceRecord append_transformation(const ProvenanceRecord& record, TransformationEvent event,
                                       Mode mode = Mode::strict,
                                       std::vector<std::string>* warnings = nullptr);

/// Returns a copy with a revision numbered max(version)+1 appended.
/// Throws UnknownTargetVersion for a revert to a version not in the log.
ProvenanceRecord append_revision(const ProvenanceRecord& record, const RevisionRequest& request);

/// Replays the revision log and returns the record with the transformation
/// list it resolves to. Throws InvalidRecord if the record has validation
/// errors.
ProvenanceRecord effective_view(const ProvenanceRecord& record);

}  // namespace provstamp
