// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "provstamp/error.hpp"
#include "provstamp/json.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace provstamp::query {

/// One step of a path: a member key, or `[*]` over array elements.
struct Segment {
    std::string key;
    bool wildcard = false;

    friend bool operator==(const Segment&, const Segment&) = default;
};

using Path = std::vector<Segment>;

enum class Op { eq, ne, lt, le, gt, ge, contains };

using Literal = std::variant<std::string, double, bool>;

struct Node {
    enum class Kind { or_, and_, not_, compare, exists };

    Kind kind = Kind::exists;
    std::vector<Node> children;  // or_/and_: 2+, not_: 1
    Path path;                   // compare, exists
    Op op = Op::eq;
    Literal literal;

    friend bool operator==(const Node&, const Node&) = default;
};

Node make_or(std::vector<Node> children);
Node make_and(std::vector<Node> children);
Node make_not(Node child);
Node make_compare(Path path, Op op, Literal literal);
Node make_exists(Path path);

/// Parse failure with the byte offset where it happened and what the
/// parser would have accepted there.
class QuerySyntaxError : public Error {
public:
    QuerySyntaxError(std::size_t offset, std::vector<std::string> expected,
                     std::string_view found);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Grammar, loosest binding first:
///   expr    := and ("or" and)*
///   and     := unary ("and" unary)*
///   unary   := "not" unary | primary
///   primary := "(" expr ")" | "exists" "(" path ")" | path op literal
///   path    := key ("[*]")* ("." key ("[*]")*)*
///   literal := "string" | number | true | false
/// <, <=, >, >= need a number or an ISO 8601 timestamp string.
Node parse_query(std::string_view text);

/// Text that parses back to the same tree.
std::string to_string(const Node& node);
std::string to_string(const Path& path);
std::string_view to_string(Op op) noexcept;

/// Evaluates against a compacted document. Never throws: a missing path or
/// a type mismatch makes the comparison false.
bool eval_query(const Node& node, const JsonDocument& doc);

/// Every value the path reaches, `[*]` fanning out over array elements.
std::vector<const JsonDocument*> resolve(const Path& path, const JsonDocument& doc);

}  // namespace provstamp::query
