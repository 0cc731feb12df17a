// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/bytes.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace provstamp::jpeg {

inline constexpr std::uint8_t kSOI = 0xD8;
inline constexpr std::uint8_t kEOI = 0xD9;
inline constexpr std::uint8_t kSOS = 0xDA;
inline constexpr std::uint8_t kAPP0 = 0xE0;
inline constexpr std::uint8_t kAPP1 = 0xE1;

/// "PROV-JSONLD/1.0" followed by NUL.
inline constexpr std::string_view kSignature{"PROV-JSONLD/1.0\0", 16};
/// Signature + 2-byte index + 2-byte count.
inline constexpr std::size_t kHeaderSize = 20;
inline constexpr std::size_t kMaxSegmentPayload = 65533;
inline constexpr std::size_t kChunkCapacity = kMaxSegmentPayload - kHeaderSize;  // 65513

/// One piece of a JPEG stream, in file order.
struct Unit {
    enum class Kind {
        marker,   ///< standalone marker (SOI, EOI, RSTn, TEM)
        segment,  ///< marker + 2-byte length + payload
        entropy,  ///< entropy-coded scan data following SOS
        trailer,  ///< bytes after EOI
    };

    Kind kind = Kind::segment;
    std::uint8_t marker = 0;
    /// 0xFF fill bytes that preceded the marker.
    std::size_t fill = 0;
    /// Segment payload (without length field), or raw bytes for
    /// entropy/trailer units.
    Bytes payload;

    /// Bytes this unit occupies in the file.
    std::size_t encoded_size() const noexcept;
};

struct File {
    std::vector<Unit> units;
};

/// Throws CorruptContainer on a missing SOI/EOI, truncated segment, or a
/// byte where a marker is required.
File parse(ByteView bytes);
Bytes write(const File& file);

bool is_provenance_segment(const Unit& unit) noexcept;

/// Splits a payload into provenance APP1 segments of at most
/// kChunkCapacity payload bytes each. Throws EmptyPayload /
/// PayloadTooLarge.
std::vector<Unit> make_provenance_segments(std::string_view payload);

/// Number of segments make_provenance_segments produces for `size` bytes.
std::size_t segment_count(std::size_t size) noexcept;

}  // namespace provstamp::jpeg
