// SPDX-License-Identifier: Apache-2.0

#include "provstamp/cli.hpp"

#include "provstamp/bytes.hpp"
#include "provstamp/codec.hpp"
#include "provstamp/container.hpp"
#include "provstamp/dataset.hpp"
#include "provstamp/error.hpp"
#include "provstamp/integrity.hpp"
#include "provstamp/jsonld.hpp"
#include "provstamp/query.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <iterator>
#include <optional>


namespace provstamp::cli {

namespace {

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::CorruptContainer:
    case ErrorCode::IncompleteSegments:
    case ErrorCode::BadCompression:
    case ErrorCode::EmptyPayload:
    case ErrorCode::PayloadTooLarge:
    case ErrorCode::MalformedJson:
    case ErrorCode::DuplicateKey: return kIoError;
    case ErrorCode::SyntaxError: return kUsage;
    default: return kNegative;
    }
}

/// Where a rewritten image goes.
struct Target {
    bool in_place = false;
    std::string output;

    void add_to(CLI::App* cmd)
    {
        auto* a = cmd->add_flag("--in-place", in_place, "Rewrite the image itself");
        auto* b = cmd->add_option("--output", output, "Write the result here");
        a->excludes(b);
    }
};

class Runner {
public:
    Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    std::string read_text(const std::string& source)
    {
        if (source == "-")
            return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
        auto bytes = read_file(source);
        return std::string(as_chars(bytes));
    }

    /// The stored payload, or nullopt after telling the user there is none.
    std::optional<std::string> payload_of(const std::string& image, ByteView bytes)
    {
        auto found = extract(bytes);
        for (const auto& w : found.warnings)
            err_ << "warning: " << image << ": " << w << '\n';
        if (!found.payload)
            err_ << image << ": no provenance embedded\n";
        return found.payload;
    }

    void print_report(const ValidationReport& report, std::ostream& os)
    {
        JsonDocument doc;
        doc["valid"] = !report.has_errors();
        doc["errors"] = report.error_count();
        doc["warnings"] = report.warning_count();
        doc["violations"] = JsonDocument::array();
        for (const auto& v : report.violations)
            doc["violations"].push_back({{"severity", to_string(v.severity)},
                                         {"code", v.code},
                                         {"message", v.message},
                                         {"path", v.path}});
        os << pretty(doc) << '\n';
    }

    void print_errors(const std::vector<FileError>& errors)
    {
        for (const auto& e : errors)
            err_ << e.path << ": " << e.message << '\n';
    }

    int cmd_embed();
    int cmd_extract();
    int cmd_validate();
    int cmd_append();
    int cmd_revise();
    int cmd_verify();
    int cmd_query();
    int cmd_index();
    int cmd_summary();
    int cmd_strip();

    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;

    std::string image_;
    std::string provenance_;
    std::string event_;
    std::string action_;
    std::optional<std::uint32_t> to_version_;
    std::string agent_;
    std::string agent_type_ = "Person";
    std::string note_;
    std::string root_;
    std::string index_;
    std::string where_;
    std::string format_ = "paths";
    std::string out_file_;
    unsigned threads_ = 0;
    bool compress_ = false;
    bool no_digest_ = false;
    bool strict_ = false;
    bool lenient_ = false;
    bool pretty_ = false;
    bool canonical_ = false;
    bool expanded_ = false;
    Target target_;
};

int Runner::cmd_embed()
{
    if (!target_.in_place && target_.output.empty()) {
        err_ << "embed: one of --in-place or --output is required\n";
        return kUsage;
    }
    auto bytes = read_file(image_);
    auto text = read_text(provenance_);
    auto parsed = parse(text, lenient_ ? Mode::lenient : Mode::strict);
    for (const auto& w : parsed.warnings)
        err_ << "warning: " << w << '\n';
    auto report = validate_record(parsed.record, lenient_ ? Mode::lenient : Mode::strict);
    if (report.has_errors()) {
        print_report(report, err_);
        return kNegative;
    }
    auto sealed = seal(bytes, parsed.record, {compress_, !no_digest_});
    write_file_atomic(target_.in_place ? image_ : target_.output, sealed);
    return kOk;
}

int Runner::cmd_extract()
{
    if (pretty_ && canonical_) {
        err_ << "extract: --pretty and --canonical are mutually exclusive\n";
        return kUsage;
    }
    auto bytes = read_file(image_);
    auto payload = payload_of(image_, bytes);
    if (!payload)
        return kNegative;
    if (!pretty_ && !canonical_ && !expanded_) {
        out_ << *payload;
        if (payload->empty() || payload->back() != '\n')
            out_ << '\n';
        return kOk;
    }

    auto parsed = parse_json(*payload, Mode::lenient);
    JsonDocument doc;
    if (expanded_) {
        doc = jsonld::expand(parsed.document, default_registry(), Mode::lenient);
    } else {
        if (pretty_) {
            // Schema member order reads best; fall back to the normalized
            // document when the record does not pass validation.
            try {
                auto record = parse(*payload, Mode::lenient).record;
                out_ << serialize(record, Style::pretty) << '\n';
                return kOk;
            } catch (const Error&) {
            }
        }
        doc = normalize_document(parsed.document);
    }
    out_ << (canonical_ ? canonicalize(doc) : pretty(doc)) << '\n';
    return kOk;
}

int Runner::cmd_validate()
{
    if (image_.empty() == provenance_.empty()) {
        err_ << "validate: give exactly one of --image or --provenance\n";
        return kUsage;
    }
    std::string text;
    if (!image_.empty()) {
        auto bytes = read_file(image_);
        auto payload = payload_of(image_, bytes);
        if (!payload)
            return kNegative;
        text = std::move(*payload);
    } else {
        text = read_text(provenance_);
    }
    auto report = validate_document(text, strict_ ? Mode::strict : Mode::lenient);
    print_report(report, out_);
    return report.has_errors() ? kNegative : kOk;
}

int Runner::cmd_append()
{
    auto bytes = read_file(image_);
    auto payload = payload_of(image_, bytes);
    if (!payload)
        return kNegative;
    auto record = parse(*payload, Mode::lenient).record;
    auto event = parse_event(read_text(event_));
    std::vector<std::string> warnings;
    record = append_transformation(record, std::move(event), lenient_ ? Mode::lenient : Mode::strict,
                                   &warnings);
    for (const auto& w : warnings)
        err_ << "warning: " << w << '\n';
    auto sealed = seal(bytes, record, {compress_, !no_digest_});
    write_file_atomic(target_.output.empty() ? image_ : target_.output, sealed);
    return kOk;
}

int Runner::cmd_revise()
{
    auto action = revision_action_from_string(action_);
    if (!action) {
        err_ << "revise: unknown action '" << action_
             << "' (expected add-data, remove-data, modify or revert)\n";
        return kUsage;
    }
    auto type = agent_type_from_string(agent_type_);
    if (!type) {
        err_ << "revise: unknown agent type '" << agent_type_ << "'\n";
        return kUsage;
    }
    if ((*action == RevisionAction::revert) != to_version_.has_value()) {
        err_ << "revise: --to-version is required for revert and only for revert\n";
        return kUsage;
    }

    auto bytes = read_file(image_);
    auto payload = payload_of(image_, bytes);
    if (!payload)
        return kNegative;
    auto record = parse(*payload, Mode::lenient).record;

    RevisionRequest request;
    request.action = *action;
    request.targetVersion = to_version_;
    request.agent = {*type, agent_, std::nullopt};
    if (!note_.empty())
        request.note = note_;
    record = append_revision(record, request);
    auto sealed = seal(bytes, record, {compress_, !no_digest_});
    write_file_atomic(target_.output.empty() ? image_ : target_.output, sealed);
    return kOk;
}

int Runner::cmd_verify()
{
    auto report = verify(read_file(image_));
    JsonDocument doc;
    doc["status"] = to_string(report.status);
    doc["expected"] = report.expected ? JsonDocument(*report.expected) : JsonDocument();
    doc["actual"] = report.actual;
    out_ << pretty(doc) << '\n';
    return report.status == DigestStatus::ok ? kOk : kNegative;
}

int Runner::cmd_query()
{
    if (root_.empty() == index_.empty()) {
        err_ << "query: give exactly one of --root or --index\n";
        return kUsage;
    }
    auto where = query::parse_query(where_);

    std::vector<DatasetEntry> matches;
    if (!root_.empty()) {
        auto result = scan(root_, where, {threads_});
        print_errors(result.errors);
        matches = std::move(result.entries);
    } else {
        auto bytes = read_file(index_);
        matches = filter(read_index(as_chars(bytes)), where);
    }

    if (format_ == "jsonl")
        out_ << index_text(matches);
    else
        for (const auto& m : matches)
            out_ << m.path << '\n';
    return matches.empty() ? kNegative : kOk;
}

int Runner::cmd_index()
{
    auto result = load_dataset(root_, {threads_});
    print_errors(result.errors);
    auto text = index_text(result.entries);
    write_file_atomic(out_file_, as_bytes(text));
    err_ << "indexed " << result.entries.size() << " image(s); " << result.missingProvenance
         << " without provenance; " << result.errors.size() << " error(s)\n";
    return kOk;
}

int Runner::cmd_summary()
{
    auto result = load_dataset(root_, {threads_});
    print_errors(result.errors);
    std::vector<JsonDocument> docs;
    docs.reserve(result.entries.size());
    for (auto& e : result.entries)
        docs.push_back(std::move(e.record));
    out_ << pretty(to_json(summarize(docs, result.missingProvenance))) << '\n';
    return kOk;
}

int Runner::cmd_strip()
{
    if (!target_.in_place && target_.output.empty()) {
        err_ << "strip: one of --in-place or --output is required\n";
        return kUsage;
    }
    auto stripped = strip(read_file(image_));
    write_file_atomic(target_.in_place ? image_ : target_.output, stripped);
    return kOk;
}

int Runner::run(const std::vector<std::string>& args)
{
    CLI::App app{"Embed, inspect and query JSON-LD provenance in PNG and JPEG images",
                 "provstamp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "provstamp 0.1.0");

    auto* embed_cmd = app.add_subcommand("embed", "Validate a record, seal it and embed it");
    embed_cmd->add_option("--image", image_, "Image file")->required();
    embed_cmd->add_option("--provenance", provenance_, "JSON-LD record file, or - for stdin")
        ->required();
    embed_cmd->add_flag("--compress", compress_, "zlib-compress the PNG text chunk");
    embed_cmd->add_flag("--no-digest", no_digest_, "Embed the record without sealing it");
    embed_cmd->add_flag("--lenient", lenient_, "Accept duplicate keys and unknown terms");
    target_.add_to(embed_cmd);

    auto* extract_cmd = app.add_subcommand("extract", "Print the embedded record");
    extract_cmd->add_option("--image", image_, "Image file")->required();
    auto* p = extract_cmd->add_flag("--pretty", pretty_, "Indented, normalized output");
    auto* c = extract_cmd->add_flag("--canonical", canonical_, "Canonical, normalized output");
    p->excludes(c);
    extract_cmd->add_flag("--expanded", expanded_, "Expand every term to its IRI");

    auto* validate_cmd = app.add_subcommand("validate", "Check an embedded or standalone record");
    validate_cmd->add_option("--image", image_, "Image file");
    validate_cmd->add_option("--provenance", provenance_, "JSON-LD record file, or - for stdin");
    validate_cmd->add_flag("--strict", strict_, "Duplicate keys, unknown terms and ordering are errors");

    auto* append_cmd = app.add_subcommand("append", "Append a transformation event and reseal");
    append_cmd->add_option("--image", image_, "Image file")->required();
    append_cmd->add_option("--event", event_, "Event JSON file, or - for stdin")->required();
    append_cmd->add_option("--output", target_.output, "Write here instead of in place");
    append_cmd->add_flag("--lenient", lenient_, "Allow an event older than the last one");
    append_cmd->add_flag("--compress", compress_, "zlib-compress the PNG text chunk");
    append_cmd->add_flag("--no-digest", no_digest_, "Keep the stored digest as is");

    auto* revise_cmd = app.add_subcommand("revise", "Append a revision and reseal");
    revise_cmd->add_option("--image", image_, "Image file")->required();
    revise_cmd->add_option("--action", action_, "add-data, remove-data, modify or revert")
        ->required();
    revise_cmd->add_option("--to-version", to_version_, "Revert target version");
    revise_cmd->add_option("--agent", agent_, "Who made the revision")->required();
    revise_cmd->add_option("--agent-type", agent_type_, "Person, Organization or SoftwareApplication");
    revise_cmd->add_option("--note", note_, "Free-text note");
    revise_cmd->add_option("--output", target_.output, "Write here instead of in place");
    revise_cmd->add_flag("--compress", compress_, "zlib-compress the PNG text chunk");
    revise_cmd->add_flag("--no-digest", no_digest_, "Keep the stored digest as is");

    auto* verify_cmd = app.add_subcommand("verify", "Compare the stored digest with the image");
    verify_cmd->add_option("--image", image_, "Image file")->required();

    auto* query_cmd = app.add_subcommand("query", "List images whose record matches an expression");
    query_cmd->add_option("--root", root_, "Dataset directory");
    query_cmd->add_option("--index", index_, "Index file built by 'index'");
    query_cmd->add_option("--where", where_, "Filter expression")->required();
    query_cmd->add_option("--format", format_, "paths or jsonl")
        ->check(CLI::IsMember({"paths", "jsonl"}));
    query_cmd->add_option("--threads", threads_, "Worker threads (0 = all cores)");

    auto* index_cmd = app.add_subcommand("index", "Write an NDJSON index of a dataset");
    index_cmd->add_option("--root", root_, "Dataset directory")->required();
    index_cmd->add_option("--out", out_file_, "Index file to write")->required();
    index_cmd->add_option("--threads", threads_, "Worker threads (0 = all cores)");

    auto* summary_cmd = app.add_subcommand("summary", "Count classes, splits and fidelity");
    summary_cmd->add_option("--root", root_, "Dataset directory")->required();
    summary_cmd->add_option("--threads", threads_, "Worker threads (0 = all cores)");

    auto* strip_cmd = app.add_subcommand("strip", "Remove embedded provenance");
    strip_cmd->add_option("--image", image_, "Image file")->required();
    target_.add_to(strip_cmd);

    std::vector<const char*> argv{"provstamp"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out_, err_);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (embed_cmd->parsed()) return cmd_embed();
        if (extract_cmd->parsed()) return cmd_extract();
        if (validate_cmd->parsed()) return cmd_validate();
        if (append_cmd->parsed()) return cmd_append();
        if (revise_cmd->parsed()) return cmd_revise();
        if (verify_cmd->parsed()) return cmd_verify();
        if (query_cmd->parsed()) return cmd_query();
        if (index_cmd->parsed()) return cmd_index();
        if (summary_cmd->parsed()) return cmd_summary();
        if (strip_cmd->parsed()) return cmd_strip();
    } catch (const Error& e) {
        err_ << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        if (!e.detail().empty() && std::string_view(e.what()).find(e.detail()) == std::string_view::npos)
            err_ << e.detail() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err_ << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err)
{
    return Runner(in, out, err).run(args);
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace provstamp::cli
