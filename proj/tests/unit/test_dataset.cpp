// SPDX-License-Identifier: Apache-2.0

#include "brute.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "reference_query.hpp"

#include "provstamp/codec.hpp"
#include "provstamp/dataset.hpp"
#include "provstamp/integrity.hpp"

#include <doctest.h>

#include <fstream>

using namespace provstamp;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> paths(const std::vector<DatasetEntry>& entries)
{
    std::vector<std::string> out;
    for (const auto& e : entries)
        out.push_back(e.path);
    return out;
}

std::vector<std::string> paths(const brute::Result& r)
{
    std::vector<std::string> out;
    for (const auto& m : r.matches)
        out.push_back(m.path);
    return out;
}

ProvenanceRecord with_class(gen::Rng& rng, const std::string& cls)
{
    auto r = gen::record(rng);
    r.annotations.clear();
    Annotation a;
    a.className = cls;
    a.bbox = std::array<double, 4>{0, 0, 1, 1};
    r.annotations.push_back(a);
    return r;
}

}  // namespace

TEST_SUITE("dataset")
{
    TEST_CASE("three images, two dogs")
    {
        gen::Rng rng(61);
        fixture::TempDir dir;
        fixture::write_bytes(dir / "c.png", seal(oracle::make_png(rng), with_class(rng, "Dog")));
        fixture::write_bytes(dir / "a.jpg", seal(oracle::make_jpeg(rng), with_class(rng, "Dog")));
        fixture::write_bytes(dir / "b.png", seal(oracle::make_png(rng), with_class(rng, "Cat")));
        auto q = query::parse_query(R"(annotations[*].class == "Dog")");
        auto res = scan(dir.path(), q);
        CHECK(paths(res.entries)
              == std::vector<std::string>{(dir / "a.jpg").generic_string(), (dir / "c.png").generic_string()});
        CHECK(paths(res.entries) == paths(brute::scan(dir.path(), q)));
        CHECK(res.missingProvenance == 0);
        CHECK(res.errors.empty());
    }

    TEST_CASE("empty directory")
    {
        fixture::TempDir dir;
        auto res = scan(dir.path(), query::parse_query("exists(name)"));
        CHECK(res.entries.empty());
        CHECK(res.missingProvenance == 0);
        CHECK(summarize({}, 0) == DatasetSummary{});
    }

    TEST_CASE("exists(name) over twenty records returns all of them")
    {
        gen::Rng rng(62);
        fixture::TempDir dir;
        for (int i = 0; i < 20; ++i)
            fixture::write_bytes(dir / ("r" + std::to_string(i) + ".png"),
                                 seal(oracle::make_png(rng), gen::record(rng)));
        auto q = query::parse_query("exists(name)");
        auto res = scan(dir.path(), q, {3});
        CHECK(res.entries.size() == 20);
        CHECK(paths(res.entries) == paths(brute::scan(dir.path(), q)));
        for (const auto& e : res.entries)
            CHECK(e.digestStatus == "OK");
    }

    TEST_CASE("unreadable unsupported and unprovenanced files")
    {
        gen::Rng rng(63);
        fixture::TempDir dir;
        fixture::write_bytes(dir / "plain.png", oracle::make_png(rng));
        fixture::write_bytes(dir / "broken.jpg", Bytes{0xFF, 0xD8, 0x00});
        fixture::write_bytes(dir / "notes.txt", Bytes{'x'});
        fixture::write_bytes(dir / "fake.PNG", Bytes{'n', 'o'});
        auto sealed = seal(oracle::make_png(rng), gen::record(rng));
        sealed.push_back(1);  // trailing byte: still readable, digest stale
        fixture::write_bytes(dir / "sub" / "good.png", sealed);

        auto res = load_dataset(dir.path());
        CHECK(res.missingProvenance == 1);
        REQUIRE(res.errors.size() == 2);
        CHECK(res.errors[0].path == (dir / "broken.jpg").generic_string());
        CHECK(res.errors[1].path == (dir / "fake.PNG").generic_string());
        REQUIRE(res.entries.size() == 1);
        CHECK(res.entries[0].digestStatus == "MODIFIED");
        CHECK(list_images(dir.path()).size() == 4);
    }

    TEST_CASE("missing root is an error")
    {
        fixture::TempDir dir;
        try {
            list_images(dir / "nope");
            FAIL("listed");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IoError);
        }
    }

    TEST_CASE("scan equals brute force on a random corpus, any thread count")
    {
        gen::Rng rng(64);
        fixture::TempDir dir;
        fixture::write_corpus(dir.path(), rng, {60, 0.1});
        auto one = load_dataset(dir.path(), {1});
        auto many = load_dataset(dir.path(), {7});
        CHECK(index_text(one.entries) == index_text(many.entries));
        CHECK(one.missingProvenance == many.missingProvenance);

        for (int i = 0; i < 30; ++i) {
            auto text = refq::render(refq::random_expr(rng, refq::record_vocabulary()));
            CAPTURE(text);
            auto q = query::parse_query(text);
            auto expected = brute::scan(dir.path(), q);
            auto got = scan(dir.path(), q, {4});
            CHECK(paths(got.entries) == paths(expected));
            CHECK(got.missingProvenance == expected.missing);
            CHECK(paths(filter(one.entries, q)) == paths(expected));
        }
    }

    TEST_CASE("index round trip and determinism")
    {
        gen::Rng rng(65);
        fixture::TempDir dir;
        fixture::write_corpus(dir.path(), rng, {40, 0.1});
        auto loaded = load_dataset(dir.path());
        auto text = index_text(loaded.entries);
        CHECK(text == index_text(load_dataset(dir.path(), {2}).entries));
        auto back = read_index(text);
        REQUIRE(back.size() == loaded.entries.size());
        CHECK(index_text(back) == text);
        std::size_t lines = std::count(text.begin(), text.end(), '\n');
        CHECK(lines == loaded.entries.size());
        // Lines are canonical JSON sorted by path.
        std::vector<std::string> p = paths(back);
        CHECK(std::is_sorted(p.begin(), p.end()));
    }

    TEST_CASE("read_index names the bad line")
    {
        try {
            read_index("{\"digestStatus\":\"OK\",\"path\":\"a\",\"record\":{}}\n{oops\n");
            FAIL("read");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedJson);
            CHECK(std::string(e.what()).rfind("index line 2", 0) == 0);
        }
        CHECK(read_index("").empty());
    }

    TEST_CASE("summary of the golden record")
    {
        auto s = summarize({to_document(fixture::dogs_in_park())});
        CHECK(s.byClass == std::map<std::string, std::size_t>{{"Dog", 2}});
        CHECK(s.byFidelity == std::map<std::string, std::size_t>{{"synthetic", 1}});
        CHECK(s.requirementCoverage.size() == 2);
        CHECK(s.totalImages == 1);
        CHECK(s.bySplit.empty());
    }

    TEST_CASE("summary split counts")
    {
        std::vector<JsonDocument> docs;
        for (const char* split : {"training", "training", "validation", "testing"}) {
            auto r = fixture::dogs_in_park();
            r.split = split == std::string("training") ? Split::training
                      : split == std::string("validation") ? Split::validation
                                                          : Split::testing;
            docs.push_back(to_document(r));
        }
        auto s = summarize(docs, 3);
        CHECK(s.bySplit == std::map<std::string, std::size_t>{{"training", 2}, {"validation", 1}, {"testing", 1}});
        CHECK(s.totalImages == 7);
        CHECK(s.missingProvenance == 3);
        CHECK(s.byClass.at("Dog") == 8);
        auto j = to_json(s);
        CHECK(j["bySplit"]["training"] == 2);
        CHECK(j["totalImages"] == 7);
    }

    TEST_CASE("summary agrees with direct counting on a corpus")
    {
        gen::Rng rng(66);
        std::vector<JsonDocument> docs;
        std::map<std::string, std::size_t> classes, splits;
        std::size_t with_split = 0;
        for (int i = 0; i < 100; ++i) {
            auto r = gen::record(rng);
            for (const auto& a : r.annotations)
                ++classes[a.className];
            if (r.split) {
                ++splits[std::string(to_string(*r.split))];
                ++with_split;
            }
            docs.push_back(to_document(r));
        }
        auto s = summarize(docs);
        CHECK(s.byClass == classes);
        CHECK(s.bySplit == splits);
        std::size_t split_total = 0;
        for (const auto& [k, v] : s.bySplit)
            split_total += v;
        CHECK(split_total == with_split);
        CHECK(split_total <= s.totalImages);
    }
}
