// SPDX-License-Identifier: Apache-2.0

#include "provstamp/query.hpp"

#include "provstamp/timestamp.hpp"

#include <charconv>
#include <cmath>
#include <optional>

namespace provstamp::query {

namespace {

bool is_key_char(char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'
           || c == '@' || c == ':' || c == '-' || c == '$' || c == '#';
}

/// Length of the JSON number at the start of `s`, or 0.
std::size_t number_length(std::string_view s) noexcept
{
    std::size_t i = 0;
    auto digits = [&] {
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9')
            ++i;
        return i - start;
    };
    if (i < s.size() && s[i] == '-')
        ++i;
    if (i < s.size() && s[i] == '0')
        ++i;
    else if (digits() == 0)
        return 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        if (digits() == 0)
            return 0;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        if (digits() == 0)
            return 0;
    }
    return i;
}

std::optional<double> to_number(std::string_view s) noexcept
{
    double v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

/// Whole-string JSON number, e.g. "4" or "-1.5e3"; nothing else coerces.
std::optional<double> numeric_string(std::string_view s) noexcept
{
    if (s.empty() || number_length(s) != s.size())
        return std::nullopt;
    return to_number(s);
}

std::optional<double> numeric_value(const JsonDocument& v) noexcept
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
        return numeric_string(v.get_ref<const std::string&>());
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Node parse()
    {
        Node n = parse_or();
        skip_ws();
        if (pos_ != s_.size())
            fail({"and", "or", "end of input"});
        return n;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected) const { fail_at(pos_, std::move(expected)); }

    [[noreturn]] void fail_at(std::size_t at, std::vector<std::string> expected) const
    {
        std::string_view found = at < s_.size() ? s_.substr(at, 1) : std::string_view{};
        throw QuerySyntaxError(at, std::move(expected), found);
    }

    void skip_ws()
    {
        while (pos_ < s_.size()
               && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }

    std::string_view word_at(std::size_t at) const
    {
        std::size_t end = at;
        while (end < s_.size() && is_key_char(s_[end]))
            ++end;
        return s_.substr(at, end - at);
    }

    bool keyword(std::string_view kw)
    {
        skip_ws();
        if (word_at(pos_) != kw)
            return false;
        pos_ += kw.size();
        return true;
    }

    bool punct(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Node parse_or()
    {
        std::vector<Node> terms{parse_and()};
        while (keyword("or"))
            terms.push_back(parse_and());
        return terms.size() == 1 ? std::move(terms.front()) : make_or(std::move(terms));
    }

    Node parse_and()
    {
        std::vector<Node> terms{parse_unary()};
        while (keyword("and"))
            terms.push_back(parse_unary());
        return terms.size() == 1 ? std::move(terms.front()) : make_and(std::move(terms));
    }

    Node parse_unary()
    {
        if (keyword("not"))
            return make_not(parse_unary());
        return parse_primary();
    }

    Node parse_primary()
    {
        skip_ws();
        if (punct('(')) {
            Node inner = parse_or();
            if (!punct(')'))
                fail({")", "and", "or"});
            return inner;
        }
        if (word_at(pos_) == "exists") {
            std::size_t save = pos_;
            pos_ += 6;
            if (punct('(')) {
                skip_ws();
                Path p = parse_path();
                if (!punct(')'))
                    fail({")"});
                return make_exists(std::move(p));
            }
            pos_ = save;  // a key that happens to be named "exists"
        }
        if (pos_ >= s_.size() || !is_key_char(s_[pos_]))
            fail({"(", "exists", "not", "path"});
        Path p = parse_path();
        Op op = parse_op();
        skip_ws();
        std::size_t at = pos_;
        Literal lit = parse_literal();
        if (op == Op::lt || op == Op::le || op == Op::gt || op == Op::ge) {
            auto* text = std::get_if<std::string>(&lit);
            if (std::holds_alternative<bool>(lit) || (text && !Timestamp::try_parse(*text)))
                fail_at(at, {"number", "timestamp"});
        }
        return make_compare(std::move(p), op, std::move(lit));
    }

    Path parse_path()
    {
        Path path;
        for (;;) {
            auto key = word_at(pos_);
            if (key.empty())
                fail({"path segment"});
            pos_ += key.size();
            path.push_back({std::string(key), false});
            while (s_.substr(pos_, 1) == "[") {
                if (s_.substr(pos_, 3) != "[*]")
                    fail({"[*]"});
                pos_ += 3;
                path.push_back({{}, true});
            }
            if (s_.substr(pos_, 1) != ".")
                return path;
            ++pos_;
        }
    }

    Op parse_op()
    {
        skip_ws();
        auto rest = s_.substr(pos_);
        static constexpr std::pair<std::string_view, Op> ops[] = {
            {"==", Op::eq}, {"!=", Op::ne}, {"<=", Op::le}, {">=", Op::ge},
            {"<", Op::lt},  {">", Op::gt},
        };
        for (auto [text, op] : ops)
            if (rest.starts_with(text)) {
                pos_ += text.size();
                return op;
            }
        if (keyword("contains"))
            return Op::contains;
        fail({"==", "!=", "<", "<=", ">", ">=", "contains"});
    }

    Literal parse_literal()
    {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '"') {
            std::size_t i = pos_ + 1;
            while (i < s_.size() && s_[i] != '"')
                i += s_[i] == '\\' ? 2 : 1;
            if (i >= s_.size())
                fail_at(s_.size(), {"closing quote"});
            pos_ = i + 1;
            try {
                return nlohmann::json::parse(s_.substr(start, pos_ - start)).get<std::string>();
            } catch (const nlohmann::json::exception&) {
                fail_at(start, {"valid string literal"});
            }
        }
        if (std::size_t n = number_length(s_.substr(pos_)); n > 0) {
            auto v = to_number(s_.substr(pos_, n));
            if (!v)
                fail_at(start, {"finite number"});
            pos_ += n;
            return *v;
        }
        if (keyword("true"))
            return true;
        if (keyword("false"))
            return false;
        fail({"string", "number", "true", "false"});
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string literal_text(const Literal& lit)
{
    if (auto* s = std::get_if<std::string>(&lit))
        return nlohmann::json(*s).dump();
    if (auto* b = std::get_if<bool>(&lit))
        return *b ? "true" : "false";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(lit));
    return std::string(buf, end);
}

/// nullopt when the value and literal are not comparable.
std::optional<bool> equals(const JsonDocument& v, const Literal& lit)
{
    if (auto* b = std::get_if<bool>(&lit)) {
        if (!v.is_boolean())
            return std::nullopt;
        return v.get<bool>() == *b;
    }
    if (auto* d = std::get_if<double>(&lit)) {
        auto n = numeric_value(v);
        if (!n)
            return std::nullopt;
        return *n == *d;
    }
    const auto& s = std::get<std::string>(lit);
    if (v.is_string())
        return v.get_ref<const std::string&>() == s;
    if (v.is_number())
        if (auto n = numeric_string(s))
            return v.get<double>() == *n;
    return std::nullopt;
}

/// Three-way order for <, <=, >, >=; nullopt when not comparable.
std::optional<int> order(const JsonDocument& v, const Literal& lit)
{
    if (auto* d = std::get_if<double>(&lit)) {
        auto n = numeric_value(v);
        if (!n)
            return std::nullopt;
        return *n < *d ? -1 : (*n > *d ? 1 : 0);
    }
    auto* s = std::get_if<std::string>(&lit);
    if (!s || !v.is_string())
        return std::nullopt;
    auto lhs = Timestamp::try_parse(v.get_ref<const std::string&>());
    auto rhs = Timestamp::try_parse(*s);
    if (!lhs || !rhs)
        return std::nullopt;
    return *lhs < *rhs ? -1 : (*lhs > *rhs ? 1 : 0);
}

bool compare(const JsonDocument& v, Op op, const Literal& lit)
{
    switch (op) {
    case Op::eq: return equals(v, lit).value_or(false);
    case Op::ne: {
        auto r = equals(v, lit);
        return r && !*r;
    }
    case Op::contains:
        if (v.is_string()) {
            auto* s = std::get_if<std::string>(&lit);
            return s && v.get_ref<const std::string&>().find(*s) != std::string::npos;
        }
        if (v.is_array()) {
            for (const auto& e : v)
                if (equals(e, lit).value_or(false))
                    return true;
        }
        return false;
    case Op::lt:
    case Op::le:
    case Op::gt:
    case Op::ge: {
        auto r = order(v, lit);
        if (!r)
            return false;
        switch (op) {
        case Op::lt: return *r < 0;
        case Op::le: return *r <= 0;
        case Op::gt: return *r > 0;
        default: return *r >= 0;
        }
    }
    }
    return false;
}

void walk(const Path& path, std::size_t i, const JsonDocument& v,
          std::vector<const JsonDocument*>& out)
{
    if (i == path.size()) {
        out.push_back(&v);
        return;
    }
    const auto& seg = path[i];
    if (seg.wildcard) {
        if (v.is_array())
            for (const auto& e : v)
                walk(path, i + 1, e, out);
        return;
    }
    if (!v.is_object())
        return;
    if (auto it = v.find(seg.key); it != v.end())
        walk(path, i + 1, *it, out);
}

std::string describe(std::size_t offset, const std::vector<std::string>& expected,
                     std::string_view found)
{
    std::string msg = "query syntax error at byte " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0)
            msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
    }
    msg += found.empty() ? ", found end of input" : ", found '" + std::string(found) + "'";
    return msg;
}

}  // namespace

QuerySyntaxError::QuerySyntaxError(std::size_t offset, std::vector<std::string> expected,
                                   std::string_view found)
    : Error(ErrorCode::SyntaxError, describe(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected))
{
}

Node make_or(std::vector<Node> children)
{
    Node n;
    n.kind = Node::Kind::or_;
    n.children = std::move(children);
    return n;
}

Node make_and(std::vector<Node> children)
{
    Node n;
    n.kind = Node::Kind::and_;
    n.children = std::move(children);
    return n;
}

Node make_not(Node child)
{
    Node n;
    n.kind = Node::Kind::not_;
    n.children.push_back(std::move(child));
    return n;
}

Node make_compare(Path path, Op op, Literal literal)
{
    Node n;
    n.kind = Node::Kind::compare;
    n.path = std::move(path);
    n.op = op;
    n.literal = std::move(literal);
    return n;
}

Node make_exists(Path path)
{
    Node n;
    n.kind = Node::Kind::exists;
    n.path = std::move(path);
    return n;
}

Node parse_query(std::string_view text)
{
    return Parser(text).parse();
}

std::string_view to_string(Op op) noexcept
{
    switch (op) {
    case Op::eq: return "==";
    case Op::ne: return "!=";
    case Op::lt: return "<";
    case Op::le: return "<=";
    case Op::gt: return ">";
    case Op::ge: return ">=";
    case Op::contains: return "contains";
    }
    return "==";
}

std::string to_string(const Path& path)
{
    std::string out;
    for (const auto& seg : path) {
        if (seg.wildcard) {
            out += "[*]";
            continue;
        }
        if (!out.empty())
            out += '.';
        out += seg.key;
    }
    return out;
}

std::string to_string(const Node& node)
{
    switch (node.kind) {
    case Node::Kind::or_:
    case Node::Kind::and_: {
        std::string out = "(";
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i > 0)
                out += node.kind == Node::Kind::or_ ? " or " : " and ";
            out += to_string(node.children[i]);
        }
        return out + ")";
    }
    case Node::Kind::not_: return "not " + to_string(node.children.front());
    case Node::Kind::exists: return "exists(" + to_string(node.path) + ")";
    case Node::Kind::compare:
        return to_string(node.path) + " " + std::string(to_string(node.op)) + " "
               + literal_text(node.literal);
    }
    return {};
}

std::vector<const JsonDocument*> resolve(const Path& path, const JsonDocument& doc)
{
    std::vector<const JsonDocument*> out;
    walk(path, 0, doc, out);
    return out;
}

bool eval_query(const Node& node, const JsonDocument& doc)
{
    switch (node.kind) {
    case Node::Kind::or_:
        for (const auto& c : node.children)
            if (eval_query(c, doc))
                return true;
        return false;
    case Node::Kind::and_:
        for (const auto& c : node.children)
            if (!eval_query(c, doc))
                return false;
        return true;
    case Node::Kind::not_: return !eval_query(node.children.front(), doc);
    case Node::Kind::exists: return !resolve(node.path, doc).empty();
    case Node::Kind::compare:
        for (const auto* v : resolve(node.path, doc))
            if (compare(*v, node.op, node.literal))
                return true;
        return false;
    }
    return false;
}

}  // namespace provstamp::query
