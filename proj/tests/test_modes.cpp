#include <catch2/catch.hpp>

#include <set>

#include "blockpar/counting.hpp"
#include "blockpar/enumeration.hpp"
#include "blockpar/modes.hpp"
#include "test_util.hpp"

using namespace blockpar;

namespace {

PartitionedOrder po(const char* text) { return parse_partitioned_order(text); }
BlockSequence bseq(const char* text) { return parse_block_sequence(text); }

}  // namespace

TEST_CASE("phi", "[modes]") {
    REQUIRE(phi(po("{(0),(2,1)}")) == bseq("({0,2},{0,1})"));
    REQUIRE(phi(po("{(1,2),(0)}")) == bseq("({0,1},{0,2})"));
    SECTION("parallel mode rewrites to the single full block") {
        for (int n : {1, 3, 5}) {
            std::vector<std::vector<int>> singletons;
            std::vector<int> full;
            for (int i = 0; i < n; ++i) {
                singletons.push_back({i});
                full.push_back(i);
            }
            REQUIRE(phi(make_partitioned_order(n, singletons)) ==
                    make_block_sequence(n, {full}));
        }
    }
}

TEST_CASE("is_ordered_partition / in_intersection", "[modes]") {
    REQUIRE(is_ordered_partition(bseq("({1},{0,2})")));
    REQUIRE_FALSE(is_ordered_partition(bseq("({0,1},{0,2})")));
    REQUIRE(is_ordered_partition(bseq("({0,1,2})")));

    REQUIRE_FALSE(in_intersection(bseq("({0,1},{2})")));
    REQUIRE(in_intersection(bseq("({0},{1},{2})")));
    REQUIRE_FALSE(in_intersection(bseq("({0,2},{0,1})")));
}

TEST_CASE("phi_section", "[modes]") {
    REQUIRE(phi_section(bseq("({0,1},{2,3})")) == po("{(0,2),(1,3)}"));
    REQUIRE(phi_section(bseq("({0,1,2})")) == po("{(0),(1),(2)}"));
    REQUIRE(phi_section(bseq("({0},{1},{2})")) == po("{(0,1,2)}"));
    REQUIRE_THROWS_AS(phi_section(bseq("({0,1},{2})")), std::invalid_argument);

    SECTION("round trip over the whole intersection, n <= 5") {
        for (int n = 1; n <= 5; ++n) {
            for (const auto& bs : testutil::all_ordered_partitions(n)) {
                if (!in_intersection(bs)) continue;
                REQUIRE(phi(phi_section(bs)) == bs);
            }
        }
    }
}

TEST_CASE("matrix_repr", "[modes]") {
    SECTION("grouping by part size") {
        const auto repr = matrix_repr(po(
            "{(0,1),(2,3),(4,5,6),(7,8,9),(10,11,12),(13,14,15),"
            "(16,17,18,19,20),(21,22,23,24,25),(26,27,28,29,30)}"));
        REQUIRE(repr.by_size.size() == 3);
        REQUIRE(repr.by_size.at(2) ==
                std::vector<std::vector<int>>{{0, 1}, {2, 3}});
        REQUIRE(repr.by_size.at(3) ==
                std::vector<std::vector<int>>{{4, 5, 6}, {7, 8, 9}, {10, 11, 12}, {13, 14, 15}});
        REQUIRE(repr.by_size.at(5) ==
                std::vector<std::vector<int>>{{16, 17, 18, 19, 20},
                                              {21, 22, 23, 24, 25},
                                              {26, 27, 28, 29, 30}});
    }
    SECTION("singleton") {
        const auto repr = matrix_repr(po("{(0)}"));
        REQUIRE(repr.by_size.at(1) == std::vector<std::vector<int>>{{0}});
    }
    SECTION("mixed") {
        const auto repr = matrix_repr(po("{(2,1),(0)}"));
        REQUIRE(repr.by_size.at(1) == std::vector<std::vector<int>>{{0}});
        REQUIRE(repr.by_size.at(2) == std::vector<std::vector<int>>{{2, 1}});
    }
}

TEST_CASE("equiv0", "[modes]") {
    REQUIRE(equiv0(po("{(0,1),(2,3)}"), po("{(0,3),(2,1)}")));
    const auto mu = po("{(0),(2,1)}");
    REQUIRE(equiv0(mu, mu));
    REQUIRE_FALSE(equiv0(po("{(0,1)}"), po("{(1,0)}")));
    REQUIRE_THROWS_AS(equiv0(po("{(0)}"), po("{(0),(1)}")), std::invalid_argument);
}

TEST_CASE("equiv_star", "[modes]") {
    REQUIRE(equiv_star(po("{(0,1)}"), po("{(1,0)}")) == 1);
    REQUIRE(equiv_star(po("{(0,1),(2,3)}"), po("{(0,3),(2,1)}")) == 0);
    REQUIRE_FALSE(equiv_star(po("{(0),(1)}"), po("{(0,1)}")).has_value());
}

TEST_CASE("canonical forms", "[modes]") {
    REQUIRE(canonical_bp0(po("{(0,1),(2,3)}")) == canonical_bp0(po("{(2,1),(0,3)}")));
    REQUIRE(canonical_bpstar(po("{(0,1)}")) == canonical_bpstar(po("{(1,0)}")));
    const auto mu = po("{(0),(2,1)}");
    REQUIRE(canonical_bp(mu) == mu);

    SECTION("canonical keys decide the relations, n <= 5") {
        for (int n = 1; n <= 5; ++n) {
            const auto modes = testutil::collect_modes(enum_bp(n));
            for (std::size_t a = 0; a < modes.size(); ++a) {
                for (std::size_t b = a; b < modes.size(); ++b) {
                    const bool eq0 = equiv0(modes[a], modes[b]);
                    REQUIRE(eq0 == (canonical_bp0(modes[a]) == canonical_bp0(modes[b])));
                    const bool star = equiv_star(modes[a], modes[b]).has_value();
                    REQUIRE(star == (canonical_bpstar(modes[a]) == canonical_bpstar(modes[b])));
                    if (eq0) {
                        REQUIRE(equiv_star(modes[a], modes[b]) == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("phi-image structure over exhaustive modes", "[modes]") {
    for (int n = 1; n <= 6; ++n) {
        auto stream = enum_bp(n);
        while (stream.next()) {
            const auto& mu = stream.mode();
            const BlockSequence bs = phi(mu);
            REQUIRE(static_cast<int>(bs.blocks.size()) == oblock_length_lcm(mu));
            for (const auto& block : bs.blocks) {
                REQUIRE(block.size() == mu.oblocks.size());
            }
            std::set<std::vector<int>> distinct(bs.blocks.begin(), bs.blocks.end());
            REQUIRE(distinct.size() == bs.blocks.size());
        }
    }
}

TEST_CASE("intersection cardinality over enumerated modes", "[modes]") {
    for (int n = 1; n <= 5; ++n) {
        std::set<BlockSequence> images_in_bs;
        auto stream = enum_bp(n);
        while (stream.next()) {
            const BlockSequence bs = phi(stream.mode());
            if (is_ordered_partition(bs)) images_in_bs.insert(bs);
        }
        REQUIRE(BigCount(images_in_bs.size()) == count_bs_inter_bp(n));
    }
}

TEST_CASE("text grammar", "[modes]") {
    SECTION("printing is canonical") {
        REQUIRE(to_string(po("{(2,1),(0)}")) == "{(0),(2,1)}");
        REQUIRE(to_string(bseq("( { 2 , 1 } , { 0 } )")) == "({1,2},{0})");
    }
    SECTION("whitespace insensitive") {
        REQUIRE(po(" { ( 0 ) , ( 2 , 1 ) } ") == po("{(0),(2,1)}"));
    }
    SECTION("round trip over enum_bp(4)") {
        auto stream = enum_bp(4);
        while (stream.next()) {
            REQUIRE(parse_partitioned_order(to_string(stream.mode())) == stream.mode());
        }
    }
    SECTION("errors carry a position") {
        try {
            parse_partitioned_order("{(0),(2,1)");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.position == 10);
        }
        REQUIRE_THROWS_AS(po("{(0)(1)}"), ParseError);
        REQUIRE_THROWS_AS(bseq("({0,0})"), ParseError);
        REQUIRE_THROWS_AS(po("{}"), ParseError);
        REQUIRE_THROWS_AS(po("{(0),(0,1)}"), std::invalid_argument);
        REQUIRE_THROWS_AS(po("{(5)}"), std::invalid_argument);
        REQUIRE_THROWS_AS(po("{(0),(2,1)} extra"), ParseError);
    }
}
