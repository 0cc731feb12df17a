// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/bytes.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace provstamp {

enum class ImageFormat { png, jpeg, unknown };

std::string_view to_string(ImageFormat f) noexcept;

/// PNG by its 8-byte signature, JPEG by FF D8.
ImageFormat detect_format(ByteView bytes) noexcept;

struct EmbedOptions {
    /// PNG only: store the iTXt text zlib-compressed.
    bool compress = false;
};

struct EmbedResult {
    Bytes bytes;
    bool replacedExisting = false;
    /// JPEG: APP1 segments written. PNG: always 1.
    std::size_t segmentCount = 1;
};

/// Stores `payload` in the image, replacing any provenance already there.
///
/// PNG: one iTXt chunk (keyword "ProvenanceJSONLD") placed before the first
/// IDAT. JPEG: PROV-JSONLD APP1 segments placed after the leading APP0/APP1
/// run. Every other chunk or segment is copied byte for byte.
///
/// Throws UnsupportedFormat, CorruptContainer, EmptyPayload,
/// PayloadTooLarge.
EmbedResult embed(ByteView image, std::string_view payload, EmbedOptions options = {});

struct Extraction {
    std::optional<std::string> payload;
    std::vector<std::string> warnings;
};

/// Reads back what embed stored. No provenance yields an empty payload.
/// Throws UnsupportedFormat, CorruptContainer, IncompleteSegments,
/// BadCompression.
Extraction extract(ByteView image);

/// The image with every provenance chunk/segment removed and nothing else
/// changed. Throws UnsupportedFormat, CorruptContainer.
Bytes strip(ByteView image);

}  // namespace provstamp
