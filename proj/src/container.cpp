// SPDX-License-Identifier: Apache-2.0

#include "provstamp/container.hpp"

#include "provstamp/error.hpp"
#include "provstamp/jpeg.hpp"
#include "provstamp/png.hpp"

#include <algorithm>
#include <map>

namespace provstamp {

namespace {

[[noreturn]] void unsupported()
{
    throw Error(ErrorCode::UnsupportedFormat, "not a PNG or JPEG file");
}

/// Removes provenance chunks in place; returns how many were removed.
std::size_t remove_provenance(png::File& file)
{
    auto before = file.chunks.size();
    std::erase_if(file.chunks, png::is_provenance_chunk);
    return before - file.chunks.size();
}

std::size_t remove_provenance(jpeg::File& file)
{
    auto before = file.units.size();
    std::erase_if(file.units, jpeg::is_provenance_segment);
    return before - file.units.size();
}

EmbedResult embed_png(ByteView image, std::string_view payload, const EmbedOptions& options)
{
    auto file = png::parse(image);
    bool replaced = remove_provenance(file) > 0;
    auto chunk = png::make_provenance_chunk(payload, options.compress);

    auto at = std::find_if(file.chunks.begin(), file.chunks.end(),
                           [](const png::Chunk& c) { return c.type_name() == "IDAT"; });
    if (at == file.chunks.end())
        at = std::prev(file.chunks.end());  // IEND
    file.chunks.insert(at, std::move(chunk));
    return {png::write(file), replaced, 1};
}

EmbedResult embed_jpeg(ByteView image, std::string_view payload)
{
    auto file = jpeg::parse(image);
    bool replaced = remove_provenance(file) > 0;
    auto segments = jpeg::make_provenance_segments(payload);

    auto at = file.units.begin() + 1;  // after SOI
    while (at != file.units.end() && at->kind == jpeg::Unit::Kind::segment
           && (at->marker == jpeg::kAPP0 || at->marker == jpeg::kAPP1))
        ++at;
    std::size_t count = segments.size();
    file.units.insert(at, std::make_move_iterator(segments.begin()),
                      std::make_move_iterator(segments.end()));
    return {jpeg::write(file), replaced, count};
}

Extraction extract_png(ByteView image)
{
    Extraction out;
    auto file = png::parse(image);
    const png::Chunk* first = nullptr;
    std::size_t found = 0;
    for (const auto& c : file.chunks) {
        if (!png::is_provenance_chunk(c))
            continue;
        if (!first)
            first = &c;
        ++found;
    }
    if (!first)
        return out;
    if (found > 1)
        out.warnings.push_back(std::to_string(found)
                               + " provenance iTXt chunks present; using the first");
    out.payload = png::provenance_text(*first);
    return out;
}

Extraction extract_jpeg(ByteView image)
{
    Extraction out;
    auto file = jpeg::parse(image);

    std::map<std::size_t, const jpeg::Unit*> parts;
    std::size_t total = 0;
    bool totals_agree = true;
    for (const auto& u : file.units) {
        if (!jpeg::is_provenance_segment(u))
            continue;
        ByteView p = u.payload;
        std::size_t index = read_be16(p, jpeg::kSignature.size());
        std::size_t count = read_be16(p, jpeg::kSignature.size() + 2);
        if (count == 0 || index >= count)
            throw Error(ErrorCode::CorruptContainer,
                        "corrupt JPEG: provenance segment index " + std::to_string(index)
                            + " outside count " + std::to_string(count));
        if (total != 0 && count != total)
            totals_agree = false;
        total = std::max(total, count);
        if (!parts.emplace(index, &u).second)
            throw Error(ErrorCode::CorruptContainer,
                        "corrupt JPEG: provenance segment " + std::to_string(index)
                            + " appears twice");
    }
    if (parts.empty())
        return out;

    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < total; ++i)
        if (!parts.contains(i))
            missing.push_back(i);
    if (!missing.empty() || !totals_agree)
        throw IncompleteSegmentsError(std::move(missing), total);

    std::string payload;
    for (const auto& [index, unit] : parts)
        payload.append(unit->payload.begin() + jpeg::kHeaderSize, unit->payload.end());
    out.payload = std::move(payload);
    return out;
}

}  // namespace

std::string_view to_string(ImageFormat f) noexcept
{
    switch (f) {
    case ImageFormat::png: return "PNG";
    case ImageFormat::jpeg: return "JPEG";
    case ImageFormat::unknown: return "unknown";
    }
    return "unknown";
}

ImageFormat detect_format(ByteView bytes) noexcept
{
    if (bytes.size() >= png::kSignature.size()
        && std::equal(png::kSignature.begin(), png::kSignature.end(), bytes.begin()))
        return ImageFormat::png;
    if (bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == jpeg::kSOI)
        return ImageFormat::jpeg;
    return ImageFormat::unknown;
}

EmbedResult embed(ByteView image, std::string_view payload, EmbedOptions options)
{
    auto format = detect_format(image);
    if (format == ImageFormat::unknown)
        unsupported();
    if (payload.empty())
        throw Error(ErrorCode::EmptyPayload, "refusing to embed an empty payload");
    return format == ImageFormat::png ? embed_png(image, payload, options)
                                      : embed_jpeg(image, payload);
}

Extraction extract(ByteView image)
{
    switch (detect_format(image)) {
    case ImageFormat::png: return extract_png(image);
    case ImageFormat::jpeg: return extract_jpeg(image);
    case ImageFormat::unknown: break;
    }
    unsupported();
}

Bytes strip(ByteView image)
{
    switch (detect_format(image)) {
    case ImageFormat::png: {
        auto file = png::parse(image);
        if (remove_provenance(file) == 0)
            return Bytes(image.begin(), image.end());
        return png::write(file);
    }
    case ImageFormat::jpeg: {
        auto file = jpeg::parse(image);
        if (remove_provenance(file) == 0)
            return Bytes(image.begin(), image.end());
        return jpeg::write(file);
    }
    case ImageFormat::unknown: break;
    }
    unsupported();
}

}  // namespace provstamp
