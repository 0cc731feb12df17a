// SPDX-License-Identifier: Apache-2.0

#include "provstamp/integrity.hpp"

#include "provstamp/codec.hpp"
#include "provstamp/error.hpp"
#include "provstamp/json.hpp"

#include <openssl/evp.h>

#include <memory>

namespace provstamp {

std::string_view to_string(DigestStatus s) noexcept
{
    switch (s) {
    case DigestStatus::ok: return "OK";
    case DigestStatus::modified: return "MODIFIED";
    case DigestStatus::missing_digest: return "MISSING_DIGEST";
    case DigestStatus::missing_provenance: return "MISSING_PROVENANCE";
    }
    return "MISSING_PROVENANCE";
}

std::string sha256_hex(ByteView data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                &EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw Error(ErrorCode::IoError, "SHA-256 computation failed");

    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

std::string content_digest(ByteView image)
{
    return "sha256:" + sha256_hex(strip(image));
}

Bytes seal(ByteView image, ProvenanceRecord record, SealOptions options)
{
    if (options.digest)
        record.contentDigest = content_digest(image);
    auto payload = serialize(record, Style::canonical);
    return embed(image, payload, {options.compress}).bytes;
}

DigestReport verify(ByteView image)
{
    DigestReport report;
    report.actual = content_digest(image);
    auto found = extract(image);
    if (!found.payload)
        return report;

    auto parsed = parse_json(*found.payload, Mode::lenient);
    std::optional<std::string> stored;
    try {
        auto doc = normalize_document(parsed.document);
        if (auto it = doc.find("contentDigest"); it != doc.end() && it->is_string())
            stored = it->get<std::string>();
    } catch (const Error&) {
        // A context we cannot resolve leaves only the literal key to go on.
        if (auto it = parsed.document.find("contentDigest");
            it != parsed.document.end() && it->is_string())
            stored = it->get<std::string>();
    }
    if (!stored) {
        report.status = DigestStatus::missing_digest;
        return report;
    }
    report.expected = stored;
    report.status = *stored == report.actual ? DigestStatus::ok : DigestStatus::modified;
    return report;
}

}  // namespace provstamp
