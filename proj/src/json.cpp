// SPDX-License-Identifier: Apache-2.0

#include "provstamp/json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>

namespace provstamp {

namespace {

/// SAX consumer that builds an ordered_json tree and notices repeated keys,
/// which the stock DOM parser silently overwrites.
class DocumentBuilder : public nlohmann::json_sax<JsonDocument> {
public:
    DocumentBuilder(Mode mode, std::vector<std::string>& duplicates)
        : mode_(mode), duplicates_(duplicates)
    {
    }

    JsonDocument take() { return std::move(root_); }

    bool null() override { return put(nullptr); }
    bool boolean(bool v) override { return put(v); }
    bool number_integer(number_integer_t v) override { return put(v); }
    bool number_unsigned(number_unsigned_t v) override { return put(v); }
    bool number_float(number_float_t v, const string_t&) override { return put(v); }
    bool string(string_t& v) override { return put(std::move(v)); }
    bool binary(binary_t& v) override { return put(JsonDocument::binary(std::move(v))); }

    bool start_object(std::size_t) override
    {
        return open(JsonDocument::object());
    }

    bool key(string_t& k) override
    {
        auto& obj = *stack_.back();
        if (obj.contains(k)) {
            std::string where = path() + (path().empty() ? "" : ".") + k;
            if (mode_ == Mode::strict)
                throw Error(ErrorCode::DuplicateKey, "duplicate object key \"" + k + "\" at "
                                                         + (path().empty() ? "$" : path()),
                            where);
            duplicates_.push_back(where);
        }
        pending_key_ = k;
        return true;
    }

    bool end_object() override { return close(); }
    bool start_array(std::size_t) override { return open(JsonDocument::array()); }
    bool end_array() override { return close(); }

    bool parse_error(std::size_t position, const std::string& last_token,
                     const nlohmann::detail::exception& ex) override
    {
        throw Error(ErrorCode::MalformedJson,
                    "malformed JSON at byte " + std::to_string(position) + " near '"
                        + last_token + "': " + ex.what(),
                    std::to_string(position));
    }

private:
    bool put(JsonDocument value)
    {
        if (stack_.empty()) {
            root_ = std::move(value);
            return true;
        }
        auto& parent = *stack_.back();
        if (parent.is_object())
            parent[pending_key_] = std::move(value);
        else
            parent.push_back(std::move(value));
        return true;
    }

    bool open(JsonDocument container)
    {
        if (stack_.empty()) {
            root_ = std::move(container);
            stack_.push_back(&root_);
            labels_.emplace_back();
            return true;
        }
        auto& parent = *stack_.back();
        JsonDocument* slot = nullptr;
        std::string label;
        if (parent.is_object()) {
            parent[pending_key_] = std::move(container);
            slot = &parent[pending_key_];
            label = pending_key_;
        } else {
            label = "[" + std::to_string(parent.size()) + "]";
            parent.push_back(std::move(container));
            slot = &parent.back();
        }
        stack_.push_back(slot);
        labels_.push_back(std::move(label));
        return true;
    }

    bool close()
    {
        stack_.pop_back();
        labels_.pop_back();
        return true;
    }

    std::string path() const
    {
        std::string out;
        for (std::size_t i = 1; i < labels_.size(); ++i) {
            if (!out.empty() && labels_[i].front() != '[')
                out += '.';
            out += labels_[i];
        }
        return out;
    }

    Mode mode_;
    std::vector<std::string>& duplicates_;
    JsonDocument root_;
    std::vector<JsonDocument*> stack_;
    std::vector<std::string> labels_;
    std::string pending_key_;
};

/// Decodes one UTF-8 sequence starting at s[i]; advances i. Invalid bytes
/// decode as themselves so ordering stays total.
char32_t next_code_point(std::string_view s, std::size_t& i)
{
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char c = byte(i);
    int extra = c < 0x80 ? 0 : (c >> 5) == 0x6 ? 1 : (c >> 4) == 0xE ? 2 : (c >> 3) == 0x1E ? 3 : -1;
    if (extra <= 0 || i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return c;
    }
    char32_t cp = c & (0x3F >> extra);
    for (int k = 1; k <= extra; ++k)
        cp = (cp << 6) | (byte(i + static_cast<std::size_t>(k)) & 0x3F);
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

void append_utf16(char32_t cp, std::u16string& out)
{
    if (cp >= 0x10000) {
        cp -= 0x10000;
        out.push_back(static_cast<char16_t>(0xD800 + (cp >> 10)));
        out.push_back(static_cast<char16_t>(0xDC00 + (cp & 0x3FF)));
    } else {
        out.push_back(static_cast<char16_t>(cp));
    }
}

std::u16string to_utf16(std::string_view s)
{
    std::u16string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();)
        append_utf16(next_code_point(s, i), out);
    return out;
}

void write_string(std::string_view s, std::string& out)
{
    static constexpr char hex[] = "0123456789abcdef";
    out += '"';
    for (char ch : s) {
        auto c = static_cast<unsigned char>(ch);
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                out += "\\u00";
                out += hex[c >> 4];
                out += hex[c & 0xF];
            } else {
                out += ch;
            }
        }
    }
    out += '"';
}

void write_double(double v, std::string& out)
{
    if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteNumber, "cannot serialize a non-finite number");
    constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53
    if (v == std::trunc(v) && std::fabs(v) < kExactIntegerLimit) {
        out += std::to_string(static_cast<std::int64_t>(v));
        return;
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void write_canonical(const JsonDocument& doc, std::string& out)
{
    using value_t = nlohmann::json::value_t;
    switch (doc.type()) {
    case value_t::null: out += "null"; break;
    case value_t::boolean: out += doc.get<bool>() ? "true" : "false"; break;
    case value_t::number_integer: out += std::to_string(doc.get<std::int64_t>()); break;
    case value_t::number_unsigned: out += std::to_string(doc.get<std::uint64_t>()); break;
    case value_t::number_float: write_double(doc.get<double>(), out); break;
    case value_t::string: write_string(doc.get_ref<const std::string&>(), out); break;
    case value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& item : doc) {
            if (!first)
                out += ',';
            first = false;
            write_canonical(item, out);
        }
        out += ']';
        break;
    }
    case value_t::object: {
        std::vector<std::pair<std::u16string, const std::string*>> keys;
        keys.reserve(doc.size());
        for (auto it = doc.begin(); it != doc.end(); ++it)
            keys.emplace_back(to_utf16(it.key()), &it.key());
        std::sort(keys.begin(), keys.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out += '{';
        bool first = true;
        for (const auto& [_, key] : keys) {
            if (!first)
                out += ',';
            first = false;
            write_string(*key, out);
            out += ':';
            write_canonical(doc.at(*key), out);
        }
        out += '}';
        break;
    }
    case value_t::binary:
    case value_t::discarded:
        throw Error(ErrorCode::MalformedJson, "document holds a non-JSON value");
    }
}

}  // namespace

ParsedJson parse_json(std::string_view text, Mode mode)
{
    ParsedJson result;
    DocumentBuilder builder(mode, result.duplicates);
    try {
        JsonDocument::sax_parse(text.begin(), text.end(), &builder);
    } catch (const Error&) {
        throw;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedJson, std::string("malformed JSON: ") + ex.what());
    }
    result.document = builder.take();
    return result;
}

bool utf16_less(std::string_view a, std::string_view b)
{
    return to_utf16(a) < to_utf16(b);
}

std::string canonicalize(const JsonDocument& doc)
{
    std::string out;
    write_canonical(doc, out);
    return out;
}

std::string pretty(const JsonDocument& doc)
{
    return doc.dump(2);
}

bool canonically_equal(const JsonDocument& a, const JsonDocument& b)
{
    return canonicalize(a) == canonicalize(b);
}

}  // namespace provstamp
