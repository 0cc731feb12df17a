// SPDX-License-Identifier: Apache-2.0

#include "provstamp/validation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace provstamp {

std::string_view to_string(Severity s) noexcept
{
    return s == Severity::error ? "error" : "warning";
}

std::size_t ValidationReport::error_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                   [](const Violation& v) {
                                                       return v.severity == Severity::error;
                                                   }));
}

std::size_t ValidationReport::warning_count() const noexcept
{
    return violations.size() - error_count();
}

void ValidationReport::error(std::string code, std::string message, std::string path)
{
    violations.push_back({Severity::error, std::move(code), std::move(message), std::move(path)});
}

void ValidationReport::warning(std::string code, std::string message, std::string path)
{
    violations.push_back({Severity::warning, std::move(code), std::move(message), std::move(path)});
}

bool is_valid_digest(std::string_view digest) noexcept
{
    constexpr std::string_view prefix = "sha256:";
    if (digest.size() != prefix.size() + 64 || digest.substr(0, prefix.size()) != prefix)
        return false;
    return std::all_of(digest.begin() + prefix.size(), digest.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

namespace {

using namespace violation;

std::string indexed(std::string_view base, std::size_t i)
{
    return std::string(base) + "[" + std::to_string(i) + "]";
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

class Checker {
public:
    Checker(ValidationReport& report, Mode mode) : report_(report), mode_(mode) {}

    void ordering(std::string message, std::string path)
    {
        if (mode_ == Mode::strict)
            report_.error(std::string(kTimestampRegression), std::move(message), std::move(path));
        else
            report_.warning(std::string(kTimestampRegression), std::move(message),
                            std::move(path));
    }

    void error(std::string_view code, std::string message, std::string path)
    {
        report_.error(std::string(code), std::move(message), std::move(path));
    }

    void required(const std::string& value, std::string_view field)
    {
        if (value.empty())
            error(kMissingField, "required field \"" + std::string(field) + "\" is missing",
                  std::string(field));
    }

    void agent(const Agent& a, const std::string& path)
    {
        if (a.name.empty())
            error(kEmptyValue, "agent name must be non-empty", path + ".name");
        if (a.identifier && !iri_like(*a.identifier))
            error(kInvalidValue, "agent identifier must be an absolute IRI",
                  path + ".identifier");
    }

    void generation(const GenerationParams& g, const std::string& path)
    {
        if (g.steps < 1)
            error(kInvalidValue, "steps must be >= 1", path + ".steps");
        if (g.width < 1)
            error(kInvalidValue, "width must be >= 1", path + ".width");
        if (g.height < 1)
            error(kInvalidValue, "height must be >= 1", path + ".height");
        if (g.seed.empty())
            error(kEmptyValue, "seed must be non-empty", path + ".seed");
        else if (!std::all_of(g.seed.begin(), g.seed.end(),
                              [](char c) { return c >= '0' && c <= '9'; }))
            error(kInvalidValue, "seed must be a string of decimal digits", path + ".seed");
    }

    void criteria(const std::vector<CriterionEntry>& list, std::string_view base)
    {
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto path = indexed(base, i);
            if (list[i].text.empty())
                error(kEmptyValue, "criterion text must be non-empty", path + ".criterion");
            if (list[i].agent)
                agent(*list[i].agent, path + ".agent");
        }
    }

    void annotation(const Annotation& a, const std::string& path)
    {
        if (a.className.empty())
            error(kEmptyValue, "annotation class must be non-empty", path + ".class");
        if (const auto* box = std::get_if<std::array<double, 4>>(&a.bbox)) {
            const auto& b = *box;
            if (!std::all_of(b.begin(), b.end(), [](double v) { return std::isfinite(v); }))
                error(kInvalidBbox, "bbox coordinates must be finite", path + ".bbox");
            else if (b[0] > b[2] || b[1] > b[3])
                error(kInvalidBbox, "bbox requires x1 <= x2 and y1 <= y2", path + ".bbox");
        }
        if (a.annotator)
            agent(*a.annotator, path + ".annotator");
    }

    void proportions(const std::map<std::string, double>& values, const std::string& path,
                     bool check_sum)
    {
        double sum = 0;
        for (const auto& [key, v] : values) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                error(kProportionRange, "proportion for \"" + key + "\" must lie in [0, 1]",
                      path + "." + key);
            sum += v;
        }
        if (check_sum && !values.empty() && std::fabs(sum - 1.0) > 1e-9)
            error(kProportionSum,
                  path.substr(path.rfind('.') + 1) + " sum " + format_number(sum) + " ≠ 1.0",
                  path);
    }

    static bool iri_like(std::string_view s)
    {
        auto colon = s.find(':');
        if (colon == std::string_view::npos || colon == 0)
            return false;
        if (!std::isalpha(static_cast<unsigned char>(s[0])))
            return false;
        return std::all_of(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(colon), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
        });
    }

private:
    ValidationReport& report_;
    Mode mode_;
};

}  // namespace

ValidationReport validate_record(const ProvenanceRecord& record, Mode mode)
{
    ValidationReport report;
    Checker check(report, mode);

    if (record.recordType != "ImageObject")
        check.error(kInvalidValue, "@type must be \"ImageObject\"", "@type");

    check.required(record.name, "name");
    if (!record.creator)
        check.error(kMissingField, "required field \"creator\" is missing", "creator");
    else
        check.agent(*record.creator, "creator");
    check.required(record.methodOfCollection, "methodOfCollection");
    if (!record.dateCreated)
        check.error(kMissingField, "required field \"dateCreated\" is missing", "dateCreated");
    check.required(record.encodingFormat, "encodingFormat");
    if (!record.fidelity) {
        check.error(kMissingField, "required field \"fidelity\" is missing", "fidelity");
    } else if (*record.fidelity == Fidelity::synthetic && !record.generation) {
        check.error(kFidelityMismatch, "synthetic records require generation parameters",
                    "generation");
    } else if (*record.fidelity == Fidelity::real && record.generation) {
        check.error(kFidelityMismatch, "real records must not carry generation parameters",
                    "generation");
    }
    if (record.generation)
        check.generation(*record.generation, "generation");

    check.criteria(record.inclusionCriteria, "inclusionCriteria");
    check.criteria(record.exclusionCriteria, "exclusionCriteria");

    for (std::size_t i = 0; i < record.requirements.size(); ++i)
        if (record.requirements[i].description.empty())
            check.error(kEmptyValue, "requirement text must be non-empty",
                        indexed("requirements", i) + ".requirement");

    for (std::size_t i = 0; i < record.annotations.size(); ++i)
        check.annotation(record.annotations[i], indexed("annotations", i));

    // Revisions: 1-based, strictly increasing, reverts point backwards.
    std::set<std::uint32_t> seen;
    std::uint32_t previous = 0;
    for (std::size_t i = 0; i < record.revisions.size(); ++i) {
        const auto& rev = record.revisions[i];
        auto path = indexed("revisions", i);
        if (i == 0 && rev.version != 1)
            check.error(kVersionSequence, "revision versions must start at 1", path + ".version");
        else if (i > 0 && rev.version <= previous)
            check.error(kVersionSequence, "revision versions must be strictly increasing",
                        path + ".version");
        if (rev.action == RevisionAction::revert) {
            if (!rev.targetVersion)
                check.error(kRevertTarget, "revert requires targetVersion",
                            path + ".targetVersion");
            else if (*rev.targetVersion >= rev.version || !seen.contains(*rev.targetVersion))
                check.error(kRevertTarget,
                            "targetVersion must name an earlier revision in the log",
                            path + ".targetVersion");
        } else if (rev.targetVersion) {
            check.error(kRevertTarget, "targetVersion is only allowed on revert",
                        path + ".targetVersion");
        }
        check.agent(rev.agent, path + ".agent");
        if (i > 0 && rev.timestamp < record.revisions[i - 1].timestamp)
            check.ordering("revision timestamp precedes the previous revision",
                           path + ".timestamp");
        seen.insert(rev.version);
        previous = std::max(previous, rev.version);
    }

    std::uint32_t last_attribution = 0;
    for (std::size_t i = 0; i < record.transformations.size(); ++i) {
        const auto& ev = record.transformations[i];
        auto path = indexed("transformations", i);
        check.agent(ev.agent, path + ".agent");
        if (i > 0 && ev.timestamp < record.transformations[i - 1].timestamp)
            check.ordering("transformation timestamp precedes the previous event",
                           path + ".timestamp");
        if (ev.underRevision != 0 && !seen.contains(ev.underRevision))
            check.error(kRevisionAttribution,
                        "underRevision names a version that is not in the revision log",
                        path + ".underRevision");
        else if (ev.underRevision < last_attribution)
            check.error(kRevisionAttribution,
                        "underRevision must be non-decreasing along the transformation log",
                        path + ".underRevision");
        last_attribution = std::max(last_attribution, ev.underRevision);
    }

    if (record.dataset) {
        check.proportions(record.dataset->classProportions, "dataset.classProportions", true);
        check.proportions(record.dataset->splitProportions, "dataset.splitProportions", false);
        for (const auto& [key, _] : record.dataset->splitProportions)
            if (!split_from_string(key))
                check.error(kInvalidValue,
                            "split must be one of training, validation, testing",
                            "dataset.splitProportions." + key);
    }

    if (record.contentDigest && !is_valid_digest(*record.contentDigest))
        check.error(kDigestFormat, "contentDigest must match sha256:[0-9a-f]{64}",
                    "contentDigest");

    return report;
}

}  // namespace provstamp
