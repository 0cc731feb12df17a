// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/json.hpp"
#include "provstamp/query.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace provstamp {

struct FileError {
    std::string path;
    std::string message;
};

/// One image with readable provenance.
struct DatasetEntry {
    std::string path;
    /// Normalized (default-context) compacted document.
    JsonDocument record;
    /// OK, MODIFIED or MISSING_DIGEST.
    std::string digestStatus;
};

struct ScanOptions {
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct LoadResult {
    std::vector<DatasetEntry> entries;  // sorted by path
    std::size_t missingProvenance = 0;
    std::vector<FileError> errors;      // sorted by path
};

/// *.png, *.jpg, *.jpeg (any case) under root, recursively, sorted by
/// path. Paths are root-joined. Throws IoError if root is unreadable.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& root);

/// Extracts and leniently parses every image under root. Per-file failures
/// are collected, never thrown.
LoadResult load_dataset(const std::filesystem::path& root, ScanOptions options = {});

/// Reads one image; nullopt when it carries no provenance.
std::optional<DatasetEntry> load_entry(const std::filesystem::path& path);

/// load_dataset filtered by the query; same ordering and error handling.
LoadResult scan(const std::filesystem::path& root, const query::Node& where,
                ScanOptions options = {});

/// Newline-delimited JSON: one canonical {"digestStatus","path","record"}
/// object per entry, in the entries' order.
std::string index_text(const std::vector<DatasetEntry>& entries);

/// Inverse of index_text. Throws MalformedJson naming the bad line.
std::vector<DatasetEntry> read_index(std::string_view text);

std::vector<DatasetEntry> filter(const std::vector<DatasetEntry>& entries,
                                 const query::Node& where);

struct DatasetSummary {
    std::size_t totalImages = 0;
    std::map<std::string, std::size_t> byClass;
    std::map<std::string, std::size_t> bySplit;
    std::map<std::string, std::size_t> byFidelity;
    std::map<std::string, std::size_t> requirementCoverage;
    std::size_t missingProvenance = 0;

    friend bool operator==(const DatasetSummary&, const DatasetSummary&) = default;
};

/// Counts over normalized documents. totalImages includes the images
/// without provenance.
DatasetSummary summarize(const std::vector<JsonDocument>& records,
                         std::size_t missing_provenance = 0);

JsonDocument to_json(const DatasetSummary& summary);

}  // namespace provstamp
