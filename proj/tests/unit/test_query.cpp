// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"
#include "generators.hpp"
#include "reference_query.hpp"

#include "provstamp/codec.hpp"
#include "provstamp/query.hpp"

#include <doctest.h>

using namespace provstamp;
using namespace provstamp::query;

namespace {

Path path(std::initializer_list<std::string_view> parts)
{
    Path p;
    for (auto s : parts)
        p.push_back(s == "[*]" ? Segment{"", true} : Segment{std::string(s), false});
    return p;
}

QuerySyntaxError syntax_error(std::string_view text)
{
    try {
        parse_query(text);
    } catch (const QuerySyntaxError& e) {
        return e;
    }
    FAIL("parsed: " << text);
    return QuerySyntaxError(0, {}, "");
}

bool holds(std::string_view q, const JsonDocument& doc)
{
    return eval_query(parse_query(q), doc);
}

JsonDocument golden()
{
    return to_document(fixture::dogs_in_park());
}

}  // namespace

TEST_SUITE("query")
{
    TEST_CASE("parse: conjunction over golden record fields")
    {
        auto n = parse_query(R"(annotations[*].class == "Dog" and flux:parameters.steps >= 4)");
        CHECK(n == make_and({make_compare(path({"annotations", "[*]", "class"}), Op::eq, std::string("Dog")),
                             make_compare(path({"flux:parameters", "steps"}), Op::ge, 4.0)}));
    }

    TEST_CASE("parse: exists and precedence")
    {
        CHECK(parse_query("exists(contentDigest)") == make_exists(path({"contentDigest"})));
        auto a = make_exists(path({"a"}));
        auto b = make_exists(path({"b"}));
        auto c = make_exists(path({"c"}));
        CHECK(parse_query("exists(a) or exists(b) and exists(c)") == make_or({a, make_and({b, c})}));
        CHECK(parse_query("(exists(a) or exists(b)) and exists(c)") == make_and({make_or({a, b}), c}));
        CHECK(parse_query("not not exists(a) and exists(b)") == make_and({make_not(make_not(a)), b}));
        CHECK(parse_query("exists(a) or exists(b) or exists(c)") == make_or({a, b, c}));
        // Keywords are only keywords where the grammar expects them.
        CHECK(parse_query("exists == true") == make_compare(path({"exists"}), Op::eq, true));
        CHECK(parse_query("and.or != false") == make_compare(path({"and", "or"}), Op::ne, false));
    }

    TEST_CASE("parse: literals")
    {
        CHECK(parse_query(R"(a == "x\"yé")").literal == Literal{std::string("x\"y\xC3\xA9")});
        CHECK(parse_query("a == -1.5e2").literal == Literal{-150.0});
        CHECK(parse_query("a contains 3").op == Op::contains);
        CHECK(parse_query(R"(dateCreated < "2025-03-02T09:31:00Z")").op == Op::lt);
    }

    TEST_CASE("to_string round-trips")
    {
        gen::Rng rng(51);
        for (int i = 0; i < 500; ++i) {
            auto text = refq::render(refq::random_expr(rng, refq::doc_vocabulary(), 4));
            auto n = parse_query(text);
            CHECK(parse_query(to_string(n)) == n);
        }
    }

    TEST_CASE("syntax errors point at the offending byte")
    {
        auto e = syntax_error("split == ");
        CHECK(e.code() == ErrorCode::SyntaxError);
        CHECK(e.offset() == 9);
        CHECK(std::find(e.expected().begin(), e.expected().end(), "string") != e.expected().end());
        CHECK(std::string(e.what()).find("found end of input") != std::string::npos);

        CHECK(syntax_error("").offset() == 0);
        CHECK(syntax_error("a ==").offset() == 4);
        CHECK(syntax_error("a = 1").offset() == 2);
        CHECK(syntax_error("(exists(a)").offset() == 10);
        CHECK(syntax_error("exists(a) exists(b)").offset() == 10);
        CHECK(syntax_error("a.b. == 1").offset() == 4);
        CHECK(syntax_error("a[1] == 1").offset() == 1);
        CHECK(syntax_error(R"(a == "open)").offset() == 10);  // unterminated
        CHECK(syntax_error("a == 01").offset() == 6);
        CHECK(syntax_error("not").offset() == 3);
        // Ordering needs a number or a timestamp.
        auto ord = syntax_error(R"(name < "abc")");
        CHECK(ord.offset() == 7);
        CHECK(ord.expected() == std::vector<std::string>{"number", "timestamp"});
        CHECK(syntax_error("a >= true").offset() == 5);
    }

    TEST_CASE("golden record examples")
    {
        auto doc = golden();
        CHECK(holds(R"(annotations[*].class == "Dog")", doc));
        CHECK(holds("flux:parameters.steps >= 4", doc));
        CHECK_FALSE(holds("exists(nonexistent.path)", doc));
        CHECK(holds(R"(annotations[*].class == "Dog" and flux:parameters.steps >= 4)", doc));
        CHECK(holds(R"(requirements[*].requirement contains "park setting")", doc));
        CHECK(holds(R"(dateCreated < "2025-03-02T10:00:00Z")", doc));  // 09:31Z
        CHECK_FALSE(holds(R"(dateCreated > "2025-03-02T10:31:00+01:00")", doc));
        CHECK(holds(R"(dateCreated >= "2025-03-02T10:31:00+01:00")", doc));
        CHECK(holds(R"(flux:parameters.seed > 140716430322375)", doc));
        CHECK_FALSE(holds(R"(annotations[*].class == "Cat")", doc));

        // Numbers quoted as strings, as the raw text has them.
        doc["flux:parameters"]["steps"] = "4";
        CHECK(holds("flux:parameters.steps >= 4", doc));
        CHECK(holds("flux:parameters.steps == 4", doc));
        CHECK_FALSE(holds("flux:parameters.steps < 4", doc));
    }

    TEST_CASE("type mismatches are false in both directions")
    {
        auto doc = parse_json(R"({"s":"abc","n":3,"b":true,"arr":[1,"x",[2]],"o":{"k":1}})", Mode::strict).document;
        CHECK_FALSE(holds("s == 3", doc));
        CHECK_FALSE(holds("s != 3", doc));
        CHECK_FALSE(holds("b != 1", doc));
        CHECK_FALSE(holds("o == 1", doc));
        CHECK_FALSE(holds("o != 1", doc));
        CHECK(holds("n != 4", doc));
        CHECK(holds(R"(s != "abd")", doc));
        CHECK(holds(R"(s contains "bc")", doc));
        CHECK_FALSE(holds("n contains 3", doc));
        CHECK(holds("arr contains 1", doc));
        CHECK(holds(R"(arr contains "x")", doc));
        CHECK_FALSE(holds("arr contains 2", doc));
        CHECK(holds("arr[*][*] == 2", doc));
        CHECK(holds("exists(arr[*])", doc));
        CHECK_FALSE(holds("exists(s[*])", doc));
        CHECK_FALSE(holds("exists(missing)", doc));
        CHECK(holds("not exists(missing)", doc));
    }

    TEST_CASE("wildcards are existential")
    {
        auto doc = parse_json(R"({"xs":[{"v":1},{"v":5},{"w":2}]})", Mode::strict).document;
        CHECK(holds("xs[*].v > 4", doc));
        CHECK(holds("xs[*].v < 4", doc));
        CHECK(holds("xs[*].v != 1", doc));
        CHECK_FALSE(holds("xs[*].v > 5", doc));
        CHECK(resolve(path({"xs", "[*]", "v"}), doc).size() == 2);
        CHECK(resolve(path({"xs", "[*]"}), doc).size() == 3);
        CHECK(resolve(path({"nope"}), doc).empty());
    }

    TEST_CASE("agrees with the reference evaluator on random documents")
    {
        gen::Rng rng(52);
        int positives = 0;
        for (int i = 0; i < 3000; ++i) {
            auto doc = refq::random_doc(rng);
            auto expr = refq::random_expr(rng, refq::doc_vocabulary());
            auto text = refq::render(expr);
            CAPTURE(text);
            CAPTURE(doc.dump());
            bool expected = refq::eval(expr, doc);
            CHECK(eval_query(parse_query(text), doc) == expected);
            positives += expected;
        }
        // Both outcomes are well represented.
        CHECK(positives > 300);
        CHECK(positives < 2700);
    }

    TEST_CASE("agrees with the reference evaluator on generated records")
    {
        gen::Rng rng(53);
        for (int i = 0; i < 1000; ++i) {
            auto doc = to_document(gen::record(rng));
            auto expr = refq::random_expr(rng, refq::record_vocabulary());
            auto text = refq::render(expr);
            CAPTURE(text);
            CHECK(eval_query(parse_query(text), doc) == refq::eval(expr, doc));
        }
    }

    TEST_CASE("boolean laws")
    {
        gen::Rng rng(54);
        for (int i = 0; i < 500; ++i) {
            auto doc = refq::random_doc(rng);
            auto a = refq::render(refq::random_expr(rng, refq::doc_vocabulary(), 2));
            auto b = refq::render(refq::random_expr(rng, refq::doc_vocabulary(), 2));
            auto ev = [&](const std::string& q) { return holds(q, doc); };
            CHECK(ev("not (" + a + " and " + b + ")") == ev("not (" + a + ") or not (" + b + ")"));
            CHECK(ev("not (" + a + " or " + b + ")") == ev("not (" + a + ") and not (" + b + ")"));
            CHECK(ev("not not (" + a + ")") == ev(a));
            CHECK(ev("(" + a + ") or not (" + a + ")"));
        }
    }
}
