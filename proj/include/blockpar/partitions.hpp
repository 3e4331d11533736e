#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace blockpar {

// A multiset of positive integers summing to n, stored as a nondecreasing
// sequence. Partitions index every counting formula and generator in this
// library: each part becomes the length of one o-block.
struct IntegerPartition {
    std::vector<int> parts;

    int n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

    auto operator<=>(const IntegerPartition&) const = default;
};

// Part-size statistics: d = maximal part size, m(j) = multiplicity of parts of
// size j (dense, zero entries included), lcm over the present sizes.
struct PartitionStats {
    int d = 0;
    std::vector<int> multiplicity;  // indexed 1..d, slot 0 unused
    std::int64_t lcm = 1;

    int m(int j) const {
        return (j >= 1 && j <= d) ? multiplicity[static_cast<std::size_t>(j)] : 0;
    }
};

inline PartitionStats part_stats(const IntegerPartition& p) {
    if (p.parts.empty()) throw std::invalid_argument("empty partition");
    PartitionStats st;
    st.d = p.parts.back();
    st.multiplicity.assign(static_cast<std::size_t>(st.d) + 1, 0);
    for (int part : p.parts) {
        if (part < 1 || part > st.d) throw std::invalid_argument("partition not nondecreasing");
        ++st.multiplicity[static_cast<std::size_t>(part)];
    }
    st.lcm = 1;
    for (int j = 1; j <= st.d; ++j) {
        if (st.m(j) > 0) st.lcm = std::lcm(st.lcm, static_cast<std::int64_t>(j));
    }
    return st;
}

// Streams the partitions of n as ascending compositions in lexicographic
// order: (1,1,...,1) first, (n) last. Single consumer; any number of
// independent streams may run concurrently.
class PartitionStream {
public:
    explicit PartitionStream(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("partitions need n >= 1");
    }

    bool next() {
        if (done_) return false;
        if (fresh_) {
            fresh_ = false;
            current_.parts.assign(static_cast<std::size_t>(n_), 1);
            index_ = 0;
            return true;
        }
        auto& a = current_.parts;
        if (a.size() <= 1) {
            done_ = true;
            return false;
        }
        // Merge the last two parts, bump the smaller one, and re-split the
        // remainder into the lexicographically smallest ascending tail.
        int y = a.back();
        a.pop_back();
        int x = a.back() + 1;
        a.pop_back();
        int s = x + y - 1;
        while (s >= 2 * x) {
            a.push_back(x);
            s -= x;
        }
        a.push_back(s);
        ++index_;
        return true;
    }

    const IntegerPartition& current() const { return current_; }
    int index() const { return index_; }  // 0-based position in the stream

private:
    IntegerPartition current_;
    int n_;
    int index_ = -1;
    bool fresh_ = true;
    bool done_ = false;
};

inline std::vector<IntegerPartition> all_partitions(int n) {
    std::vector<IntegerPartition> out;
    PartitionStream ps(n);
    while (ps.next()) out.push_back(ps.current());
    return out;
}

inline std::optional<IntegerPartition> partition_at(int n, int index) {
    PartitionStream ps(n);
    while (ps.next()) {
        if (ps.index() == index) return ps.current();
    }
    return std::nullopt;
}

}  // namespace blockpar
