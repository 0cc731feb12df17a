// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations the tests compare the library against. None of
// these call into provstamp.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

using Bytes = std::vector<std::uint8_t>;

/// Bit-at-a-time CRC-32 (reflected, polynomial 0xEDB88320).
std::uint32_t crc32(const std::uint8_t* data, std::size_t size, std::uint32_t crc = 0);

/// Hex SHA-256 computed by the system's sha256sum.
std::string sha256sum(const Bytes& data);

struct PngChunk {
    std::string type;
    std::size_t offset = 0;  // of the length field
    std::size_t length = 0;  // data length
};

/// Walks a PNG chunk by chunk without checking anything.
std::vector<PngChunk> png_chunks(const Bytes& png);

/// Recomputes every chunk CRC.
void repair_png_crcs(Bytes& png);

/// Raw bytes (length + type + data + crc) of every chunk of the given type.
std::vector<Bytes> png_chunk_bytes(const Bytes& png, std::string_view type);

struct PngOptions {
    std::uint32_t width = 1;
    std::uint32_t height = 1;
    int idat_chunks = 1;
    bool ancillary = false;  // add tEXt/gAMA/tIME chunks
};

/// A valid 8-bit RGB PNG with random pixels.
Bytes make_png(std::mt19937_64& rng, const PngOptions& options = {});

/// A structurally valid baseline JPEG: SOI, APP0 (JFIF), optionally an
/// Exif APP1 and a COM, DQT, SOF0, DHT, SOS, random entropy data with byte
/// stuffing and restart markers, EOI. The entropy data does not decode to a
/// meaningful picture; only the marker structure matters here.
Bytes make_jpeg(std::mt19937_64& rng, bool exif = false, bool comment = false);

struct JpegSegment {
    std::uint8_t marker = 0;
    std::size_t offset = 0;  // of the 0xFF
    std::size_t size = 0;    // whole segment including marker, 0 for standalone
};

/// Markers up to and including SOS, by walking length fields.
std::vector<JpegSegment> jpeg_header_segments(const Bytes& jpeg);

/// Bytes from SOS to the end of the file (scan data, EOI, trailer).
Bytes jpeg_scan_and_tail(const Bytes& jpeg);

/// Bytes of every segment that is not a provenance APP1, in order, from
/// SOI to the start of SOS.
std::vector<Bytes> jpeg_non_provenance_segments(const Bytes& jpeg);

}  // namespace oracle
