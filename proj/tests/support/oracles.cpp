// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <unistd.h>
#include <zlib.h>

namespace oracle {

namespace {

void be32(Bytes& out, std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void be16(Bytes& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get32(const Bytes& b, std::size_t at)
{
    return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16)
           | (std::uint32_t{b[at + 2]} << 8) | b[at + 3];
}

void chunk(Bytes& out, std::string_view type, const Bytes& data)
{
    be32(out, static_cast<std::uint32_t>(data.size()));
    Bytes body(type.begin(), type.end());
    body.insert(body.end(), data.begin(), data.end());
    out.insert(out.end(), body.begin(), body.end());
    be32(out, crc32(body.data(), body.size()));
}

void segment(Bytes& out, std::uint8_t marker, const Bytes& payload)
{
    out.push_back(0xFF);
    out.push_back(marker);
    be16(out, static_cast<std::uint16_t>(payload.size() + 2));
    out.insert(out.end(), payload.begin(), payload.end());
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> byte(0, 255);
    Bytes b(n);
    for (auto& x : b)
        x = static_cast<std::uint8_t>(byte(rng));
    return b;
}

}  // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t size, std::uint32_t crc)
{
    crc = ~crc;
    for (std::size_t i = 0; i < size; ++i) {
        crc ^= data[i];
        for (int k = 0; k < 8; ++k)
            crc = (crc & 1) ? (crc >> 1) ^ 0xEDB88320u : crc >> 1;
    }
    return ~crc;
}

std::string sha256sum(const Bytes& data)
{
    char name[] = "/tmp/provstamp-oracle-XXXXXX";
    int fd = mkstemp(name);
    if (fd < 0)
        throw std::runtime_error("mkstemp failed");
    std::size_t done = 0;
    while (done < data.size()) {
        auto n = ::write(fd, data.data() + done, data.size() - done);
        if (n <= 0) {
            ::close(fd);
            throw std::runtime_error("write failed");
        }
        done += static_cast<std::size_t>(n);
    }
    ::close(fd);

    std::string cmd = std::string("sha256sum ") + name;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        throw std::runtime_error("cannot run sha256sum");
    std::array<char, 65> hex{};
    auto got = std::fread(hex.data(), 1, 64, p);
    pclose(p);
    std::remove(name);
    if (got != 64)
        throw std::runtime_error("sha256sum produced no digest");
    return std::string(hex.data(), 64);
}

std::vector<PngChunk> png_chunks(const Bytes& png)
{
    std::vector<PngChunk> out;
    std::size_t pos = 8;
    while (pos + 12 <= png.size()) {
        PngChunk c;
        c.offset = pos;
        c.length = get32(png, pos);
        c.type.assign(png.begin() + static_cast<std::ptrdiff_t>(pos + 4),
                      png.begin() + static_cast<std::ptrdiff_t>(pos + 8));
        out.push_back(c);
        pos += 12 + c.length;
        if (c.type == "IEND")
            break;
    }
    return out;
}

void repair_png_crcs(Bytes& png)
{
    for (const auto& c : png_chunks(png)) {
        auto crc = crc32(png.data() + c.offset + 4, c.length + 4);
        for (int i = 0; i < 4; ++i)
            png[c.offset + 8 + c.length + i] = static_cast<std::uint8_t>(crc >> (24 - 8 * i));
    }
}

std::vector<Bytes> png_chunk_bytes(const Bytes& png, std::string_view type)
{
    std::vector<Bytes> out;
    for (const auto& c : png_chunks(png))
        if (c.type == type)
            out.emplace_back(png.begin() + static_cast<std::ptrdiff_t>(c.offset),
                             png.begin() + static_cast<std::ptrdiff_t>(c.offset + 12 + c.length));
    return out;
}

Bytes make_png(std::mt19937_64& rng, const PngOptions& o)
{
    Bytes raw;
    for (std::uint32_t y = 0; y < o.height; ++y) {
        raw.push_back(0);  // filter: none
        auto row = random_bytes(rng, std::size_t{o.width} * 3);
        raw.insert(raw.end(), row.begin(), row.end());
    }
    uLongf zlen = compressBound(static_cast<uLong>(raw.size()));
    Bytes z(zlen);
    compress2(z.data(), &zlen, raw.data(), static_cast<uLong>(raw.size()), 6);
    z.resize(zlen);

    Bytes out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    Bytes ihdr;
    be32(ihdr, o.width);
    be32(ihdr, o.height);
    ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});
    chunk(out, "IHDR", ihdr);
    if (o.ancillary) {
        Bytes gama;
        be32(gama, 45455);
        chunk(out, "gAMA", gama);
        std::string text = "Comment";
        Bytes t(text.begin(), text.end());
        t.push_back(0);
        auto body = random_bytes(rng, 5);
        for (auto& b : body)
            b = static_cast<std::uint8_t>('a' + b % 26);
        t.insert(t.end(), body.begin(), body.end());
        chunk(out, "tEXt", t);
    }

    int parts = std::max(1, o.idat_chunks);
    std::size_t step = (z.size() + static_cast<std::size_t>(parts) - 1) / static_cast<std::size_t>(parts);
    for (std::size_t at = 0; at < z.size(); at += step)
        chunk(out, "IDAT", Bytes(z.begin() + static_cast<std::ptrdiff_t>(at),
                                 z.begin() + static_cast<std::ptrdiff_t>(std::min(z.size(), at + step))));
    if (o.ancillary)
        chunk(out, "tIME", Bytes{0x07, 0xE9, 3, 2, 9, 31, 0});
    chunk(out, "IEND", {});
    return out;
}

Bytes make_jpeg(std::mt19937_64& rng, bool exif, bool comment)
{
    Bytes out{0xFF, 0xD8};
    segment(out, 0xE0, Bytes{'J', 'F', 'I', 'F', 0, 1, 1, 0, 0, 1, 0, 1, 0, 0});
    if (exif) {
        Bytes e{'E', 'x', 'i', 'f', 0, 0, 'M', 'M', 0, 42, 0, 0, 0, 8, 0, 0};
        segment(out, 0xE1, e);
    }
    if (comment) {
        std::string c = "generated for tests";
        segment(out, 0xFE, Bytes(c.begin(), c.end()));
    }
    Bytes dqt{0x00};
    auto q = random_bytes(rng, 64);
    for (auto& b : q)
        b = static_cast<std::uint8_t>(1 + b % 99);
    dqt.insert(dqt.end(), q.begin(), q.end());
    segment(out, 0xDB, dqt);
    segment(out, 0xC0, Bytes{8, 0, 8, 0, 8, 1, 1, 0x11, 0});
    Bytes dht{0x00, 0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0,
              0,    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    segment(out, 0xC4, dht);
    segment(out, 0xDD, Bytes{0, 4});  // DRI
    segment(out, 0xDA, Bytes{1, 1, 0, 0, 63, 0});

    std::uniform_int_distribution<int> len(16, 400);
    int intervals = 1 + static_cast<int>(rng() % 4);
    for (int r = 0; r < intervals; ++r) {
        if (r > 0) {
            out.push_back(0xFF);
            out.push_back(static_cast<std::uint8_t>(0xD0 + (r - 1) % 8));
        }
        for (auto b : random_bytes(rng, static_cast<std::size_t>(len(rng)))) {
            out.push_back(b);
            if (b == 0xFF)
                out.push_back(0x00);
        }
    }
    out.push_back(0xFF);
    out.push_back(0xD9);
    return out;
}

std::vector<JpegSegment> jpeg_header_segments(const Bytes& jpeg)
{
    std::vector<JpegSegment> out{{0xD8, 0, 0}};
    std::size_t pos = 2;
    while (pos + 4 <= jpeg.size() && jpeg[pos] == 0xFF) {
        std::uint8_t m = jpeg[pos + 1];
        std::size_t len = (std::size_t{jpeg[pos + 2]} << 8) | jpeg[pos + 3];
        out.push_back({m, pos, len + 2});
        pos += len + 2;
        if (m == 0xDA)
            break;
    }
    return out;
}

Bytes jpeg_scan_and_tail(const Bytes& jpeg)
{
    auto segs = jpeg_header_segments(jpeg);
    return Bytes(jpeg.begin() + static_cast<std::ptrdiff_t>(segs.back().offset), jpeg.end());
}

std::vector<Bytes> jpeg_non_provenance_segments(const Bytes& jpeg)
{
    static constexpr char sig[] = "PROV-JSONLD/1.0";
    std::vector<Bytes> out;
    for (const auto& s : jpeg_header_segments(jpeg)) {
        if (s.size == 0 || s.marker == 0xDA)
            continue;
        Bytes seg(jpeg.begin() + static_cast<std::ptrdiff_t>(s.offset),
                  jpeg.begin() + static_cast<std::ptrdiff_t>(s.offset + s.size));
        bool prov = s.marker == 0xE1 && seg.size() >= 4 + 16
                    && std::equal(sig, sig + 16, seg.begin() + 4);
        if (!prov)
            out.push_back(std::move(seg));
    }
    return out;
}

}  // namespace oracle
