#include <catch2/catch.hpp>

#include <numeric>
#include <set>
#include <vector>

#include "blockpar/bigint.hpp"
#include "blockpar/partitions.hpp"

using namespace blockpar;

namespace {

// Independent brute-force generator: nondecreasing part lists via recursion
// on the minimum allowed part.
void brute_partitions(int remaining, int min_part, std::vector<int>& acc,
                      std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(acc);
        return;
    }
    for (int part = min_part; part <= remaining; ++part) {
        acc.push_back(part);
        brute_partitions(remaining - part, part, acc, out);
        acc.pop_back();
    }
}

std::vector<std::vector<int>> brute_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    brute_partitions(n, 1, acc, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Independent dynamic-programming count of partitions.
long long partition_count_dp(int n) {
    std::vector<std::vector<long long>> dp(static_cast<std::size_t>(n) + 1,
                                           std::vector<long long>(static_cast<std::size_t>(n) + 1, 0));
    for (int maxp = 0; maxp <= n; ++maxp) dp[0][static_cast<std::size_t>(maxp)] = 1;
    for (int sum = 1; sum <= n; ++sum) {
        for (int maxp = 1; maxp <= n; ++maxp) {
            dp[static_cast<std::size_t>(sum)][static_cast<std::size_t>(maxp)] =
                dp[static_cast<std::size_t>(sum)][static_cast<std::size_t>(maxp - 1)];
            if (sum >= maxp) {
                dp[static_cast<std::size_t>(sum)][static_cast<std::size_t>(maxp)] +=
                    dp[static_cast<std::size_t>(sum - maxp)][static_cast<std::size_t>(maxp)];
            }
        }
    }
    return dp[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)];
}

std::vector<std::vector<int>> stream_to_lists(int n) {
    std::vector<std::vector<int>> got;
    PartitionStream ps(n);
    while (ps.next()) got.push_back(ps.current().parts);
    return got;
}

}  // namespace

TEST_CASE("partition stream: order, content, count", "[partitions]") {
    SECTION("n=1") {
        REQUIRE(stream_to_lists(1) == std::vector<std::vector<int>>{{1}});
    }
    SECTION("n=4 explicit") {
        const std::vector<std::vector<int>> expected = {
            {1, 1, 1, 1}, {1, 1, 2}, {1, 3}, {2, 2}, {4}};
        REQUIRE(stream_to_lists(4) == expected);
    }
    SECTION("matches brute force and is lexicographically sorted, n <= 12") {
        for (int n = 1; n <= 12; ++n) {
            const auto got = stream_to_lists(n);
            REQUIRE(got == brute_partitions(n));
            REQUIRE(std::is_sorted(got.begin(), got.end()));
        }
    }
    SECTION("count equals DP oracle up to n = 20") {
        for (int n = 1; n <= 20; ++n) {
            long long count = 0;
            PartitionStream ps(n);
            while (ps.next()) ++count;
            REQUIRE(count == partition_count_dp(n));
        }
    }
    SECTION("duplicate-free") {
        for (int n : {6, 9}) {
            const auto got = stream_to_lists(n);
            std::set<std::vector<int>> uniq(got.begin(), got.end());
            REQUIRE(uniq.size() == got.size());
        }
    }
    SECTION("n=31 contains (2,2,3,3,3,3,5,5,5)") {
        const std::vector<int> target = {2, 2, 3, 3, 3, 3, 5, 5, 5};
        bool found = false;
        PartitionStream ps(31);
        while (ps.next()) {
            if (ps.current().parts == target) {
                found = true;
                break;
            }
        }
        REQUIRE(found);
    }
    SECTION("n=0 rejected") {
        REQUIRE_THROWS_AS(PartitionStream(0), std::invalid_argument);
    }
}

TEST_CASE("part_stats", "[partitions]") {
    SECTION("mixed sizes") {
        const auto st = part_stats(IntegerPartition{{2, 2, 3, 3, 3, 3, 5, 5, 5}});
        REQUIRE(st.d == 5);
        REQUIRE(st.m(1) == 0);
        REQUIRE(st.m(2) == 2);
        REQUIRE(st.m(3) == 4);
        REQUIRE(st.m(4) == 0);
        REQUIRE(st.m(5) == 3);
        REQUIRE(st.lcm == 30);
    }
    SECTION("all ones") {
        const auto st = part_stats(IntegerPartition{{1, 1, 1}});
        REQUIRE(st.d == 1);
        REQUIRE(st.m(1) == 3);
        REQUIRE(st.lcm == 1);
    }
    SECTION("two distinct parts") {
        const auto st = part_stats(IntegerPartition{{2, 3}});
        REQUIRE(st.d == 3);
        REQUIRE(st.m(2) == 1);
        REQUIRE(st.m(3) == 1);
        REQUIRE(st.lcm == 6);
    }
}

TEST_CASE("partition invariants", "[partitions]") {
    for (int n = 1; n <= 12; ++n) {
        FactorialTable fact(n);
        PartitionStream ps(n);
        while (ps.next()) {
            const auto st = part_stats(ps.current());
            int weighted = 0;
            for (int j = 1; j <= st.d; ++j) weighted += j * st.m(j);
            REQUIRE(weighted == n);
            for (int part : ps.current().parts) {
                REQUIRE(st.lcm % part == 0);
            }
            REQUIRE(fact(n) % BigCount(st.lcm) == 0);
        }
    }
}
