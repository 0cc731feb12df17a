// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/bytes.hpp"
#include "provstamp/container.hpp"
#include "provstamp/record.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace provstamp {

enum class DigestStatus { ok, modified, missing_digest, missing_provenance };

/// "OK", "MODIFIED", "MISSING_DIGEST", "MISSING_PROVENANCE".
std::string_view to_string(DigestStatus s) noexcept;

struct DigestReport {
    DigestStatus status = DigestStatus::missing_provenance;
    std::optional<std::string> expected;
    std::string actual;
};

/// "sha256:" + hex SHA-256 of the image with its provenance stripped.
std::string content_digest(ByteView image);

/// Lowercase hex SHA-256 of arbitrary bytes.
std::string sha256_hex(ByteView data);

struct SealOptions {
    bool compress = false;
    /// Leave contentDigest as it is on the record instead of recomputing it.
    bool digest = true;
};

/// Sets the record's contentDigest from the image, serializes it
/// canonically and embeds it. Returns the new file.
Bytes seal(ByteView image, ProvenanceRecord record, SealOptions options = {});

/// Recomputes the digest and compares it with the stored one. Only the
/// contentDigest member is read, so records with schema problems still
/// verify. Throws CorruptContainer, MalformedJson.
DigestReport verify(ByteView image);

}  // namespace provstamp
