// SPDX-License-Identifier: Apache-2.0

#include "provstamp/png.hpp"

#include "provstamp/error.hpp"

#include <algorithm>
#include <cstring>

#include <zlib.h>

namespace provstamp::png {

namespace {

// Inflated provenance larger than this is treated as hostile.
constexpr std::size_t kMaxInflatedSize = std::size_t{256} << 20;

[[noreturn]] void corrupt(const std::string& why)
{
    throw Error(ErrorCode::CorruptContainer, "corrupt PNG: " + why);
}

Bytes deflate_text(std::string_view text)
{
    uLongf bound = compressBound(static_cast<uLong>(text.size()));
    Bytes out(bound);
    int rc = compress2(out.data(), &bound, reinterpret_cast<const Bytef*>(text.data()),
                       static_cast<uLong>(text.size()), Z_BEST_COMPRESSION);
    if (rc != Z_OK)
        throw Error(ErrorCode::BadCompression, "zlib compression failed");
    out.resize(bound);
    return out;
}

std::string inflate_text(ByteView data)
{
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK)
        throw Error(ErrorCode::BadCompression, "zlib initialisation failed");
    zs.next_in = const_cast<Bytef*>(data.data());
    zs.avail_in = static_cast<uInt>(data.size());

    std::string out;
    char buf[16384];
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw Error(ErrorCode::BadCompression, "provenance text does not inflate");
        }
        out.append(buf, sizeof buf - zs.avail_out);
        if (out.size() > kMaxInflatedSize) {
            inflateEnd(&zs);
            throw Error(ErrorCode::BadCompression, "inflated provenance exceeds size limit");
        }
        if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
            inflateEnd(&zs);
            throw Error(ErrorCode::BadCompression, "truncated compressed provenance");
        }
    }
    bool trailing = zs.avail_in != 0;
    inflateEnd(&zs);
    if (trailing)
        throw Error(ErrorCode::BadCompression, "data after end of compressed provenance");
    return out;
}

}  // namespace

std::uint32_t crc32(ByteView data, std::uint32_t seed) noexcept
{
    // zlib treats a null buffer as a request for the initial value.
    if (data.empty())
        return seed;
    return static_cast<std::uint32_t>(
        ::crc32(seed, data.data(), static_cast<uInt>(data.size())));
}

std::uint32_t Chunk::compute_crc() const noexcept
{
    auto c = crc32({reinterpret_cast<const std::uint8_t*>(type.data()), type.size()});
    return crc32(data, c);
}

Chunk Chunk::make(std::string_view type_name, Bytes data)
{
    Chunk c;
    std::copy_n(type_name.begin(), 4, c.type.begin());
    c.data = std::move(data);
    c.crc = c.compute_crc();
    return c;
}

File parse(ByteView bytes)
{
    if (bytes.size() < kSignature.size()
        || !std::equal(kSignature.begin(), kSignature.end(), bytes.begin()))
        corrupt("bad signature");

    File file;
    std::size_t pos = kSignature.size();
    bool seen_end = false;
    while (!seen_end) {
        if (bytes.size() - pos < 12)
            corrupt(pos == bytes.size() ? "missing IEND" : "truncated chunk header");
        std::uint32_t length = read_be32(bytes, pos);
        if (length > kMaxChunkLength)
            corrupt("chunk length out of range");
        if (bytes.size() - pos - 12 < length)
            corrupt("truncated chunk data");

        Chunk chunk;
        std::memcpy(chunk.type.data(), bytes.data() + pos + 4, 4);
        for (char c : chunk.type)
            if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')))
                corrupt("invalid chunk type");
        auto data = bytes.subspan(pos + 8, length);
        chunk.data.assign(data.begin(), data.end());
        chunk.crc = read_be32(bytes, pos + 8 + length);
        if (chunk.crc != chunk.compute_crc())
            corrupt("CRC mismatch in " + std::string(chunk.type_name()) + " chunk at byte "
                    + std::to_string(pos));
        if (file.chunks.empty() && chunk.type_name() != "IHDR")
            corrupt("first chunk is not IHDR");

        seen_end = chunk.type_name() == "IEND";
        file.chunks.push_back(std::move(chunk));
        pos += 12 + length;
    }
    file.trailing.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
    return file;
}

Bytes write(const File& file)
{
    Bytes out(kSignature.begin(), kSignature.end());
    for (const auto& c : file.chunks) {
        put_be32(out, c.length());
        out.insert(out.end(), c.type.begin(), c.type.end());
        out.insert(out.end(), c.data.begin(), c.data.end());
        put_be32(out, c.crc);
    }
    out.insert(out.end(), file.trailing.begin(), file.trailing.end());
    return out;
}

bool is_provenance_chunk(const Chunk& chunk) noexcept
{
    if (chunk.type_name() != "iTXt" || chunk.data.size() <= kProvenanceKeyword.size())
        return false;
    return std::equal(kProvenanceKeyword.begin(), kProvenanceKeyword.end(), chunk.data.begin())
           && chunk.data[kProvenanceKeyword.size()] == 0;
}

TextChunk parse_itxt(ByteView data)
{
    auto take_cstring = [&](std::size_t& pos, const char* what) {
        auto end = std::find(data.begin() + static_cast<std::ptrdiff_t>(pos), data.end(), 0);
        if (end == data.end())
            corrupt(std::string("iTXt ") + what + " is not NUL-terminated");
        std::string s(data.begin() + static_cast<std::ptrdiff_t>(pos), end);
        pos = static_cast<std::size_t>(end - data.begin()) + 1;
        return s;
    };

    TextChunk t;
    std::size_t pos = 0;
    t.keyword = take_cstring(pos, "keyword");
    if (t.keyword.empty() || t.keyword.size() > 79)
        corrupt("iTXt keyword length out of range");
    if (data.size() - pos < 2)
        corrupt("iTXt chunk truncated");
    std::uint8_t flag = data[pos];
    t.method = data[pos + 1];
    pos += 2;
    if (flag > 1)
        throw Error(ErrorCode::BadCompression,
                    "iTXt compression flag " + std::to_string(flag) + " is invalid");
    t.compressed = flag == 1;
    t.language = take_cstring(pos, "language tag");
    t.translated_keyword = take_cstring(pos, "translated keyword");
    t.text.assign(data.begin() + static_cast<std::ptrdiff_t>(pos), data.end());
    return t;
}

Chunk make_provenance_chunk(std::string_view payload, bool compress)
{
    Bytes data(kProvenanceKeyword.begin(), kProvenanceKeyword.end());
    data.push_back(0);                      // keyword terminator
    data.push_back(compress ? 1 : 0);       // compression flag
    data.push_back(0);                      // compression method
    data.push_back(0);                      // empty language tag
    data.push_back(0);                      // empty translated keyword
    if (compress) {
        auto z = deflate_text(payload);
        data.insert(data.end(), z.begin(), z.end());
    } else {
        data.insert(data.end(), payload.begin(), payload.end());
    }
    if (data.size() > kMaxChunkLength)
        throw Error(ErrorCode::PayloadTooLarge, "payload exceeds the PNG chunk size limit");
    return Chunk::make("iTXt", std::move(data));
}

std::string provenance_text(const Chunk& chunk)
{
    auto t = parse_itxt(chunk.data);
    if (!t.compressed)
        return std::string(t.text.begin(), t.text.end());
    if (t.method != 0)
        throw Error(ErrorCode::BadCompression,
                    "unknown iTXt compression method " + std::to_string(t.method));
    return inflate_text(t.text);
}

}  // namespace provstamp::png
