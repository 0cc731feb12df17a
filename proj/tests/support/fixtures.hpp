// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/bytes.hpp"
#include "provstamp/record.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace fixture {

/// The dogs-in-a-park record, built field by field.
provstamp::ProvenanceRecord dogs_in_park();

/// Contents of a file under the source tree.
std::string source_text(const std::string& relative);

/// A fresh directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

struct CorpusOptions {
    std::size_t images = 200;
    /// Share of images written without provenance.
    double unprovenanced = 0.05;
};

/// Writes a mixed PNG/JPEG dataset of sealed random records under `root`,
/// some in subdirectories and some with upper-case extensions.
void write_corpus(const std::filesystem::path& root, std::mt19937_64& rng,
                  const CorpusOptions& options = {});

void write_bytes(const std::filesystem::path& path, const provstamp::Bytes& data);

}  // namespace fixture
