#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "blockpar/enumeration.hpp"
#include "blockpar/modes.hpp"

namespace testutil {

// Every ordered partition of [0,n): set partitions of the index set with all
// orderings of the parts. Independent of the library's generators.
inline std::vector<blockpar::BlockSequence> all_ordered_partitions(int n) {
    std::vector<blockpar::BlockSequence> out;
    std::vector<std::vector<int>> parts;
    auto emit = [&]() {
        std::vector<int> order(parts.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end());
        do {
            std::vector<std::vector<int>> blocks;
            for (int k : order) blocks.push_back(parts[static_cast<std::size_t>(k)]);
            out.push_back(blockpar::make_block_sequence(n, blocks));
        } while (std::next_permutation(order.begin(), order.end()));
    };
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            emit();
            return;
        }
        const std::size_t existing = parts.size();
        for (std::size_t k = 0; k < existing; ++k) {
            parts[k].push_back(i);
            self(self, i + 1);
            parts[k].pop_back();
        }
        parts.push_back({i});
        self(self, i + 1);
        parts.pop_back();
    };
    rec(rec, 0);
    return out;
}

inline std::vector<blockpar::PartitionedOrder> collect_modes(blockpar::ModeStream stream) {
    std::vector<blockpar::PartitionedOrder> out;
    while (stream.next()) out.push_back(stream.mode());
    return out;
}

inline std::size_t drain(blockpar::ModeStream stream) {
    std::size_t count = 0;
    while (stream.next()) ++count;
    return count;
}

}  // namespace testutil
