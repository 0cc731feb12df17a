// SPDX-License-Identifier: Apache-2.0

#include "provstamp/jpeg.hpp"

#include "provstamp/error.hpp"

#include <algorithm>

namespace provstamp::jpeg {

namespace {

[[noreturn]] void corrupt(const std::string& why)
{
    throw Error(ErrorCode::CorruptContainer, "corrupt JPEG: " + why);
}

bool is_standalone(std::uint8_t marker) noexcept
{
    return marker == kSOI || marker == kEOI || marker == 0x01
           || (marker >= 0xD0 && marker <= 0xD7);
}

bool is_restart(std::uint8_t marker) noexcept
{
    return marker >= 0xD0 && marker <= 0xD7;
}

/// End of the entropy-coded data that starts at `pos`: the first 0xFF that
/// introduces a real marker (not a stuffed 0x00 or an RSTn).
std::size_t scan_entropy(ByteView bytes, std::size_t pos)
{
    std::size_t i = pos;
    while (i < bytes.size()) {
        if (bytes[i] != 0xFF) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < bytes.size() && bytes[j] == 0xFF)
            ++j;
        if (j >= bytes.size())
            corrupt("entropy-coded data runs to end of file");
        if (bytes[j] == 0x00 || is_restart(bytes[j])) {
            i = j + 1;
            continue;
        }
        return i;
    }
    corrupt("missing EOI after scan data");
}

}  // namespace

std::size_t Unit::encoded_size() const noexcept
{
    switch (kind) {
    case Kind::marker: return fill + 2;
    case Kind::segment: return fill + 4 + payload.size();
    case Kind::entropy:
    case Kind::trailer: return payload.size();
    }
    return 0;
}

File parse(ByteView bytes)
{
    if (bytes.size() < 2 || bytes[0] != 0xFF || bytes[1] != kSOI)
        corrupt("missing SOI");

    File file;
    file.units.push_back({Unit::Kind::marker, kSOI, 0, {}});
    std::size_t pos = 2;
    for (;;) {
        if (pos >= bytes.size())
            corrupt("missing EOI");
        if (bytes[pos] != 0xFF)
            corrupt("expected a marker at byte " + std::to_string(pos));
        std::size_t fill = 0;
        while (pos + 1 < bytes.size() && bytes[pos + 1] == 0xFF) {
            ++fill;
            ++pos;
        }
        if (pos + 1 >= bytes.size())
            corrupt("truncated marker");
        std::uint8_t marker = bytes[pos + 1];
        if (marker == 0x00)
            corrupt("stuffed byte outside scan data at byte " + std::to_string(pos));
        pos += 2;

        if (is_standalone(marker)) {
            if (marker == kSOI)
                corrupt("nested SOI");
            file.units.push_back({Unit::Kind::marker, marker, fill, {}});
            if (marker == kEOI)
                break;
            continue;
        }

        if (bytes.size() - pos < 2)
            corrupt("truncated segment length");
        std::size_t length = read_be16(bytes, pos);
        if (length < 2 || bytes.size() - pos < length)
            corrupt("segment length out of range at byte " + std::to_string(pos));
        auto payload = bytes.subspan(pos + 2, length - 2);
        file.units.push_back(
            {Unit::Kind::segment, marker, fill, Bytes(payload.begin(), payload.end())});
        pos += length;

        if (marker == kSOS) {
            std::size_t end = scan_entropy(bytes, pos);
            if (end > pos) {
                auto data = bytes.subspan(pos, end - pos);
                file.units.push_back({Unit::Kind::entropy, 0, 0, Bytes(data.begin(), data.end())});
            }
            pos = end;
        }
    }
    if (pos < bytes.size()) {
        auto tail = bytes.subspan(pos);
        file.units.push_back({Unit::Kind::trailer, 0, 0, Bytes(tail.begin(), tail.end())});
    }
    return file;
}

Bytes write(const File& file)
{
    std::size_t total = 0;
    for (const auto& u : file.units)
        total += u.encoded_size();
    Bytes out;
    out.reserve(total);
    for (const auto& u : file.units) {
        switch (u.kind) {
        case Unit::Kind::marker:
        case Unit::Kind::segment:
            out.insert(out.end(), u.fill, 0xFF);
            out.push_back(0xFF);
            out.push_back(u.marker);
            if (u.kind == Unit::Kind::segment) {
                put_be16(out, static_cast<std::uint16_t>(u.payload.size() + 2));
                out.insert(out.end(), u.payload.begin(), u.payload.end());
            }
            break;
        case Unit::Kind::entropy:
        case Unit::Kind::trailer:
            out.insert(out.end(), u.payload.begin(), u.payload.end());
            break;
        }
    }
    return out;
}

bool is_provenance_segment(const Unit& unit) noexcept
{
    return unit.kind == Unit::Kind::segment && unit.marker == kAPP1
           && unit.payload.size() >= kHeaderSize
           && std::equal(kSignature.begin(), kSignature.end(), unit.payload.begin());
}

std::size_t segment_count(std::size_t size) noexcept
{
    return (size + kChunkCapacity - 1) / kChunkCapacity;
}

std::vector<Unit> make_provenance_segments(std::string_view payload)
{
    if (payload.empty())
        throw Error(ErrorCode::EmptyPayload, "refusing to embed an empty payload");
    std::size_t count = segment_count(payload.size());
    if (count > 0xFFFF)
        throw Error(ErrorCode::PayloadTooLarge,
                    "payload needs " + std::to_string(count) + " APP1 segments (max 65535)");

    std::vector<Unit> segments;
    segments.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto slice = payload.substr(i * kChunkCapacity, kChunkCapacity);
        Unit u{Unit::Kind::segment, kAPP1, 0, {}};
        u.payload.reserve(kHeaderSize + slice.size());
        u.payload.insert(u.payload.end(), kSignature.begin(), kSignature.end());
        put_be16(u.payload, static_cast<std::uint16_t>(i));
        put_be16(u.payload, static_cast<std::uint16_t>(count));
        u.payload.insert(u.payload.end(), slice.begin(), slice.end());
        segments.push_back(std::move(u));
    }
    return segments;
}

}  // namespace provstamp::jpeg
