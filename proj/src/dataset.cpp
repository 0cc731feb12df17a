// SPDX-License-Identifier: Apache-2.0

#include "provstamp/dataset.hpp"

#include "provstamp/bytes.hpp"
#include "provstamp/codec.hpp"
#include "provstamp/container.hpp"
#include "provstamp/error.hpp"
#include "provstamp/integrity.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <thread>
#include <variant>

namespace fs = std::filesystem;

namespace provstamp {

namespace {

bool has_image_extension(const fs::path& p)
{
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

struct Missing {};
using Outcome = std::variant<Missing, DatasetEntry, FileError>;

Outcome load_one(const fs::path& path)
{
    try {
        if (auto entry = load_entry(path))
            return std::move(*entry);
        return Missing{};
    } catch (const std::exception& e) {
        return FileError{path.generic_string(), e.what()};
    }
}

void add(std::map<std::string, std::size_t>& counts, const JsonDocument* v)
{
    if (v && v->is_string())
        ++counts[v->get<std::string>()];
}

const JsonDocument* member(const JsonDocument& obj, const char* key)
{
    if (!obj.is_object())
        return nullptr;
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

}  // namespace

std::vector<fs::path> list_images(const fs::path& root)
{
    std::error_code ec;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec)
        throw Error(ErrorCode::IoError, "cannot read directory " + root.string() + ": " + ec.message());

    std::vector<fs::path> out;
    for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec)
            throw Error(ErrorCode::IoError, "cannot read directory under " + root.string() + ": "
                                                + ec.message());
        std::error_code type_ec;
        if (it->is_regular_file(type_ec) && has_image_extension(it->path()))
            out.push_back(it->path());
    }
    std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
        return a.generic_string() < b.generic_string();
    });
    return out;
}

std::optional<DatasetEntry> load_entry(const fs::path& path)
{
    auto bytes = read_file(path);
    auto found = extract(bytes);
    if (!found.payload)
        return std::nullopt;

    auto parsed = parse_json(*found.payload, Mode::lenient);
    DatasetEntry entry;
    entry.path = path.generic_string();
    entry.record = normalize_document(parsed.document, Mode::lenient);

    auto actual = content_digest(bytes);
    auto* stored = member(entry.record, "contentDigest");
    if (!stored || !stored->is_string())
        entry.digestStatus = std::string(to_string(DigestStatus::missing_digest));
    else
        entry.digestStatus = std::string(to_string(
            stored->get<std::string>() == actual ? DigestStatus::ok : DigestStatus::modified));
    return entry;
}

LoadResult load_dataset(const fs::path& root, ScanOptions options)
{
    auto files = list_images(root);
    std::vector<Outcome> outcomes(files.size());

    unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++)
            outcomes[i] = load_one(files[i]);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(work);
    }

    // Results land in file order, so output does not depend on scheduling.
    LoadResult result;
    for (auto& o : outcomes) {
        if (auto* e = std::get_if<DatasetEntry>(&o))
            result.entries.push_back(std::move(*e));
        else if (auto* f = std::get_if<FileError>(&o))
            result.errors.push_back(std::move(*f));
        else
            ++result.missingProvenance;
    }
    return result;
}

std::vector<DatasetEntry> filter(const std::vector<DatasetEntry>& entries, const query::Node& where)
{
    std::vector<DatasetEntry> out;
    for (const auto& e : entries)
        if (query::eval_query(where, e.record))
            out.push_back(e);
    return out;
}

LoadResult scan(const fs::path& root, const query::Node& where, ScanOptions options)
{
    auto loaded = load_dataset(root, options);
    loaded.entries = filter(loaded.entries, where);
    return loaded;
}

std::string index_text(const std::vector<DatasetEntry>& entries)
{
    std::string out;
    for (const auto& e : entries) {
        JsonDocument line;
        line["digestStatus"] = e.digestStatus;
        line["path"] = e.path;
        line["record"] = e.record;
        out += canonicalize(line);
        out += '\n';
    }
    return out;
}

std::vector<DatasetEntry> read_index(std::string_view text)
{
    std::vector<DatasetEntry> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty())
            continue;

        auto where = "index line " + std::to_string(line_no);
        JsonDocument doc;
        try {
            doc = parse_json(line, Mode::strict).document;
        } catch (const Error& e) {
            throw Error(ErrorCode::MalformedJson, where + ": " + e.what());
        }
        auto* path = member(doc, "path");
        auto* status = member(doc, "digestStatus");
        auto* record = member(doc, "record");
        if (!path || !path->is_string() || !status || !status->is_string() || !record
            || !record->is_object())
            throw Error(ErrorCode::MalformedJson,
                        where + ": expected an object with path, digestStatus and record");
        out.push_back({path->get<std::string>(), *record, status->get<std::string>()});
    }
    return out;
}

DatasetSummary summarize(const std::vector<JsonDocument>& records, std::size_t missing_provenance)
{
    DatasetSummary s;
    s.totalImages = records.size() + missing_provenance;
    s.missingProvenance = missing_provenance;
    for (const auto& r : records) {
        add(s.bySplit, member(r, "split"));
        add(s.byFidelity, member(r, "fidelity"));
        if (auto* anns = member(r, "annotations"); anns && anns->is_array())
            for (const auto& a : *anns)
                add(s.byClass, member(a, "class"));
        if (auto* reqs = member(r, "requirements"); reqs && reqs->is_array())
            for (const auto& q : *reqs)
                add(s.requirementCoverage, q.is_string() ? &q : member(q, "requirement"));
    }
    return s;
}

JsonDocument to_json(const DatasetSummary& s)
{
    auto counts = [](const std::map<std::string, std::size_t>& m) {
        auto obj = JsonDocument::object();
        for (const auto& [k, v] : m)
            obj[k] = v;
        return obj;
    };
    JsonDocument out;
    out["totalImages"] = s.totalImages;
    out["byClass"] = counts(s.byClass);
    out["bySplit"] = counts(s.bySplit);
    out["byFidelity"] = counts(s.byFidelity);
    out["requirementCoverage"] = counts(s.requirementCoverage);
    out["missingProvenance"] = s.missingProvenance;
    return out;
}

}  // namespace provstamp
