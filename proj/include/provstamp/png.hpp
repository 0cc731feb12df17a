// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/bytes.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace provstamp::png {

inline constexpr std::array<std::uint8_t, 8> kSignature{0x89, 0x50, 0x4E, 0x47,
                                                        0x0D, 0x0A, 0x1A, 0x0A};
inline constexpr std::string_view kProvenanceKeyword = "ProvenanceJSONLD";
inline constexpr std::uint32_t kMaxChunkLength = 0x7FFFFFFF;

struct Chunk {
    std::array<char, 4> type{};
    Bytes data;
    /// Stored CRC; equals crc() for any chunk that parsed.
    std::uint32_t crc = 0;

    std::string_view type_name() const noexcept { return {type.data(), type.size()}; }
    std::uint32_t length() const noexcept { return static_cast<std::uint32_t>(data.size()); }

    /// CRC-32 over type ‖ data.
    std::uint32_t compute_crc() const noexcept;

    static Chunk make(std::string_view type, Bytes data);
};

/// A PNG file split into chunks. Bytes after IEND are kept verbatim.
struct File {
    std::vector<Chunk> chunks;
    Bytes trailing;
};

/// CRC-32/ISO-HDLC, the checksum PNG chunks carry.
std::uint32_t crc32(ByteView data, std::uint32_t seed = 0) noexcept;

/// Throws CorruptContainer on a bad signature, truncated chunk, CRC
/// mismatch, missing IHDR/IEND.
File parse(ByteView bytes);
Bytes write(const File& file);

bool is_provenance_chunk(const Chunk& chunk) noexcept;

struct TextChunk {
    std::string keyword;
    bool compressed = false;
    std::uint8_t method = 0;
    std::string language;
    std::string translated_keyword;
    /// Text as stored (still compressed when `compressed`).
    Bytes text;
};

/// Splits iTXt chunk data into its fields. Throws CorruptContainer.
TextChunk parse_itxt(ByteView data);

/// Builds the provenance iTXt chunk for `payload`.
Chunk make_provenance_chunk(std::string_view payload, bool compress);

/// Payload of a provenance iTXt chunk, inflated if needed. Throws
/// BadCompression / CorruptContainer.
std::string provenance_text(const Chunk& chunk);

}  // namespace provstamp::png
