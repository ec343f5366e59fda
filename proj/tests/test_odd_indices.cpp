#include <totodd/odd_indices.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace totodd;

TEST_CASE("minimal and empty index sets", "[odd-indices]") {
    const IndexTable t93(9, 3);
    REQUIRE(t93.size() == 1);
    CHECK(t93[0] == OddComposition{3, 3, 3});

    CHECK(IndexTable(10, 3).empty());  // three odd parts cannot sum to an even total
    CHECK(IndexTable(8, 3).empty());   // below the minimum weight
    CHECK(IndexTable(2, 1).empty());
}

TEST_CASE("lex-decreasing enumeration at weight 12 depth 2", "[odd-indices]") {
    const IndexTable t(12, 2);
    const std::vector<OddComposition> expected{{9, 3}, {7, 5}, {5, 7}, {3, 9}};
    CHECK(t.entries() == expected);
}

TEST_CASE("counting formula matches enumeration", "[odd-indices]") {
    CHECK(count_totally_odd(12, 2) == 4);
    CHECK(count_totally_odd(15, 3) == 10);
    CHECK(count_totally_odd(9, 3) == 1);
    CHECK(count_totally_odd(10, 3) == 0);

    for (int r = 1; r <= 5; ++r)
        for (int n = 0; n <= 24; ++n)
            CHECK(static_cast<std::int64_t>(IndexTable(n, r).size()) == count_totally_odd(n, r));
}

TEST_CASE("entries are strictly lex-decreasing with exact positions", "[odd-indices]") {
    for (int r = 1; r <= 4; ++r) {
        for (int n = 3 * r; n <= 21; ++n) {
            const IndexTable t(n, r);
            for (std::size_t i = 0; i + 1 < t.size(); ++i) CHECK(t[i] > t[i + 1]);
            for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.position_of(t[i]) == i);
        }
    }
}

TEST_CASE("position lookups", "[odd-indices]") {
    const IndexTable t(12, 2);
    CHECK(t.position_of({7, 5}) == 1);
    CHECK(IndexTable(9, 3).position_of({3, 3, 3}) == 0);
    CHECK_THROWS_AS(t.position_of({6, 6}), std::out_of_range);
    CHECK_THROWS_AS(t.position_of({11, 1}), std::out_of_range);
    CHECK_FALSE(t.contains({3, 3}));
}

TEST_CASE("index table JSON round-trip", "[odd-indices]") {
    const IndexTable t(15, 3);
    const auto j = t.to_json();
    CHECK(j.at("N") == 15);
    CHECK(j.at("r") == 3);
    CHECK(j.at("entries").size() == 10);
    const IndexTable back = IndexTable::from_json(j);
    CHECK(back.entries() == t.entries());
}
