#include <doctest.h>

#include "ivl/examples.hpp"
#include "ivl/symbolic.hpp"

#include <cstdint>

using namespace ivl;

TEST_CASE("canonical form: primitive cycle, absorbed prefix") {
    SymbolicPoint p("", "abab");
    CHECK(p.cycle() == "ab");

    // a(ba)^inf spells (ab)^inf
    SymbolicPoint q("a", "ba");
    CHECK(q.prefix().empty());
    CHECK(q.cycle() == "ab");
    CHECK(q == SymbolicPoint("", "ab"));

    // prefix ending in a full cycle copy is absorbed
    SymbolicPoint r("cdeab", "ab");
    CHECK(r.prefix() == "cde");
    CHECK(r.cycle() == "ab");

    CHECK_THROWS(SymbolicPoint("ab", ""));
}

TEST_CASE("equality agrees with sequence equality") {
    SymbolicPoint a("abc", "de");
    SymbolicPoint b("abcde", "de");  // one extra period spelled out
    CHECK(a == b);
    for (std::size_t k = 0; k < 24; ++k) CHECK(a.at(k) == b.at(k));
    CHECK(a.unroll(17) == b.unroll(17));
    CHECK(SymbolicPoint("", "ab") != SymbolicPoint("", "ba"));
}

TEST_CASE("shift drops symbols and renormalizes") {
    SymbolicPoint x("abcde", "ab");
    CHECK(shift(x, 0) == x);
    CHECK(shift(x, 2) == SymbolicPoint("cde", "ab"));
    CHECK(shift(x, 5) == SymbolicPoint("", "ab"));
    CHECK(shift(x, 6) == SymbolicPoint("", "ba"));
    CHECK(shift(SymbolicPoint("", "ab"), 1) == SymbolicPoint("", "ba"));
    // Shifting through the cycle wraps.
    CHECK(shift(x, 5 + 4) == SymbolicPoint("", "ab"));
    for (std::size_t p = 0; p < 12; ++p)
        CHECK(shift(x, p).unroll(20) == x.unroll(20 + p).substr(p));
}

TEST_CASE("metric: first mismatch index") {
    SymbolicPoint a("", "ab");
    SymbolicPoint b("ab", "cde");
    CHECK(symbolic_distance(a, a) == 0);
    CHECK(symbolic_distance(a, b) == Rat(1, 3));  // agree on "ab", differ at index 2
    CHECK(symbolic_distance(a, SymbolicPoint("", "b")) == 1);
    CHECK(symbolic_distance(a, b) == symbolic_distance(b, a));
}

TEST_CASE("block parse: greedy unique parse") {
    auto full = block_parse("abab");
    CHECK(full.blocks == std::vector<std::size_t>{0, 0});
    CHECK(!full.failure_index.has_value());

    auto mixed = block_parse("abcde");
    CHECK(mixed.blocks == std::vector<std::size_t>{0, 1});
    CHECK(!mixed.failure_index.has_value());

    auto bad = block_parse("ba");
    CHECK(bad.blocks.empty());
    REQUIRE(bad.failure_index.has_value());
    CHECK(*bad.failure_index == 0);

    // Partial trailing block is still viable.
    auto partial = block_parse("abc");
    CHECK(partial.blocks == std::vector<std::size_t>{0});
    CHECK(!partial.failure_index.has_value());

    // Dies inside a block.
    auto inside = block_parse("abca");
    REQUIRE(inside.failure_index.has_value());
    CHECK(*inside.failure_index == 3);
}

TEST_CASE("distance to the block language") {
    const BlockLanguage& blocks = example_blocks();
    CHECK(blocks.distance(SymbolicPoint("", "ab")) == 0);
    CHECK(blocks.distance(SymbolicPoint("abcde", "ab")) == 0);
    CHECK(blocks.distance(SymbolicPoint("", "b")) == 1);
    // "ab" extends, "abb" does not: L = 2.
    CHECK(blocks.distance(SymbolicPoint("ab", "b")) == Rat(1, 3));
    CHECK(blocks.distance(SymbolicPoint("abcd", "x")) == Rat(1, 5));
    // Periodic-but-misaligned point: cde then b forever.
    CHECK(blocks.distance(SymbolicPoint("cde", "b")) == Rat(1, 4));
    CHECK(dist_to_block_language(SymbolicPoint("", "b")) == 1);
}

TEST_CASE("membership detects cycling runs") {
    const BlockLanguage& blocks = example_blocks();
    CHECK(blocks.contains(SymbolicPoint("", "ab")));
    CHECK(blocks.contains(SymbolicPoint("", "abcde")));
    CHECK(blocks.contains(SymbolicPoint("cde", "ab")));
    CHECK(!blocks.contains(SymbolicPoint("", "b")));
    CHECK(!blocks.contains(SymbolicPoint("", "ae")));
}

TEST_CASE("embedding round-trip recovers block words") {
    const BlockLanguage& blocks = example_blocks();
    // All block words of length <= 10, checked via parse of the unrolled prefix.
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (std::size_t depth = 0; depth < 10; ++depth) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& word : frontier) {
            for (std::size_t b = 0; b < 2; ++b) {
                auto w = word;
                w.push_back(b);
                std::size_t embedded_len = 0;
                for (std::size_t blk : w) embedded_len += blocks.blocks()[blk].size();
                SymbolicPoint x = blocks.embed(w, example_block_tail());
                auto parsed = blocks.parse(x.unroll(embedded_len));
                CHECK(!parsed.failure_index.has_value());
                REQUIRE(parsed.blocks.size() >= w.size());
                for (std::size_t i = 0; i < w.size(); ++i) CHECK(parsed.blocks[i] == w[i]);
                next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
        if (frontier.size() > 128) frontier.resize(128);  // keep the sweep bounded
    }
}

TEST_CASE("block language constructor rejects ambiguous heads") {
    CHECK_THROWS(BlockLanguage({"ab", "ac"}));
    CHECK_THROWS(BlockLanguage({"", "a"}));
    CHECK_THROWS(BlockLanguage({}));
}
