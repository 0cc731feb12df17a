// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace provstamp {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) noexcept
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline std::string_view as_chars(ByteView b) noexcept
{
    return {reinterpret_cast<const char*>(b.data()), b.size()};
}

inline std::uint32_t read_be32(ByteView b, std::size_t at) noexcept
{
    return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16)
           | (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

inline std::uint16_t read_be16(ByteView b, std::size_t at) noexcept
{
    return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

inline void put_be32(Bytes& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_be16(Bytes& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

/// Whole-file read; throws Error(IoError).
Bytes read_file(const std::filesystem::path& path);

/// Writes `data` to a temporary sibling of `path` and renames it over
/// `path`, so readers see either the old or the new file. Throws
/// Error(IoError); on failure `path` is left untouched.
void write_file_atomic(const std::filesystem::path& path, ByteView data);

}  // namespace provstamp
