#include <catch2/catch.hpp>

#include <set>
#include <string>

#include "blockpar/counting.hpp"
#include "blockpar/enumeration.hpp"
#include "test_util.hpp"

using namespace blockpar;

TEST_CASE("small streams, exact content", "[enumeration]") {
    SECTION("n=1") {
        for (ModeClass cls : {ModeClass::bp, ModeClass::bp0, ModeClass::bpstar}) {
            auto modes = testutil::collect_modes(ModeStream(cls, 1));
            REQUIRE(modes.size() == 1);
            REQUIRE(to_string(modes[0]) == "{(0)}");
        }
    }
    SECTION("enum_bp(2)") {
        const auto modes = testutil::collect_modes(enum_bp(2));
        REQUIRE(modes.size() == 3);
        REQUIRE(to_string(modes[0]) == "{(0),(1)}");
        REQUIRE(to_string(modes[1]) == "{(0,1)}");
        REQUIRE(to_string(modes[2]) == "{(1,0)}");
    }
    SECTION("enum_bp0(3) equals enum_bp(3) as sets") {
        // The quotient is trivial at n=3: both have 13 elements.
        const auto a = testutil::collect_modes(enum_bp(3));
        const auto b = testutil::collect_modes(enum_bp0(3));
        REQUIRE(std::set<PartitionedOrder>(a.begin(), a.end()) ==
                std::set<PartitionedOrder>(b.begin(), b.end()));
    }
}

TEST_CASE("stream cardinalities equal the closed formulas", "[enumeration]") {
    for (int n = 1; n <= 7; ++n) {
        REQUIRE(BigCount(testutil::drain(enum_bp(n))) == count_bp(n));
        REQUIRE(BigCount(testutil::drain(enum_bp0(n))) == count_bp0(n));
        REQUIRE(BigCount(testutil::drain(enum_bpstar(n))) == count_bpstar(n));
    }
}

TEST_CASE("streams match the brute-force oracles", "[enumeration]") {
    for (int n = 1; n <= 7; ++n) {
        const auto oracle = oracle_enum_bp(n);
        std::set<PartitionedOrder> got;
        auto stream = enum_bp(n);
        while (stream.next()) {
            REQUIRE(got.insert(canonical_bp(stream.mode())).second);  // duplicate-free
        }
        REQUIRE(got == oracle);
    }
    for (int n = 1; n <= 7; ++n) {
        std::set<std::string> keys0;
        auto s0 = enum_bp0(n);
        while (s0.next()) {
            REQUIRE(keys0.insert(to_string(canonical_bp0(s0.mode()))).second);
        }
        REQUIRE(keys0 == oracle_quotient(n, Relation::eq0));

        std::set<std::string> keys_star;
        auto ss = enum_bpstar(n);
        while (ss.next()) {
            REQUIRE(keys_star.insert(to_string(canonical_bpstar(ss.mode()))).second);
        }
        REQUIRE(keys_star == oracle_quotient(n, Relation::star));
    }
}

TEST_CASE("pairwise non-equivalence within quotient streams", "[enumeration]") {
    for (int n = 1; n <= 5; ++n) {
        const auto modes0 = testutil::collect_modes(enum_bp0(n));
        for (std::size_t a = 0; a < modes0.size(); ++a) {
            for (std::size_t b = a + 1; b < modes0.size(); ++b) {
                REQUIRE_FALSE(equiv0(modes0[a], modes0[b]));
            }
        }
        const auto modes_star = testutil::collect_modes(enum_bpstar(n));
        for (std::size_t a = 0; a < modes_star.size(); ++a) {
            for (std::size_t b = a + 1; b < modes_star.size(); ++b) {
                REQUIRE_FALSE(equiv_star(modes_star[a], modes_star[b]).has_value());
            }
        }
    }
}

TEST_CASE("items are grouped by partition, in partition order", "[enumeration]") {
    for (ModeClass cls : {ModeClass::bp, ModeClass::bp0, ModeClass::bpstar}) {
        ModeStream stream(cls, 6);
        int last_index = -1;
        while (stream.next()) {
            REQUIRE(stream.partition_index() >= last_index);
            last_index = stream.partition_index();
            // The o-block lengths are exactly the generating partition.
            std::vector<int> lengths;
            for (const auto& ob : stream.mode().oblocks) {
                lengths.push_back(static_cast<int>(ob.size()));
            }
            std::sort(lengths.begin(), lengths.end());
            REQUIRE(lengths == stream.partition().parts);
        }
    }
}

TEST_CASE("sharding by partition index reassembles the full stream", "[enumeration]") {
    const int n = 6;
    const int partition_count = static_cast<int>(all_partitions(n).size());
    for (ModeClass cls : {ModeClass::bp, ModeClass::bp0, ModeClass::bpstar}) {
        std::vector<std::string> full;
        {
            ModeStream stream(cls, n);
            while (stream.next()) full.push_back(to_string(stream.mode()));
        }
        std::vector<std::string> stitched;
        for (int shard = 0; shard < partition_count; ++shard) {
            ModeStream stream(cls, n, StreamOptions{shard, std::nullopt});
            while (stream.next()) {
                REQUIRE(stream.partition_index() == shard);
                stitched.push_back(to_string(stream.mode()));
            }
        }
        REQUIRE(stitched == full);
    }
}

TEST_CASE("limit option truncates", "[enumeration]") {
    auto stream = enum_bp(5, StreamOptions{std::nullopt, std::uint64_t{10}});
    REQUIRE(testutil::drain(std::move(stream)) == 10);
}

TEST_CASE("guards", "[enumeration]") {
    REQUIRE_THROWS_AS(oracle_enum_bp(8), RefusalError);
    REQUIRE_THROWS_AS(oracle_enum_bp(0), std::invalid_argument);
    REQUIRE_THROWS_AS(enum_bp(0).next(), std::invalid_argument);
}
