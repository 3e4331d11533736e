#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blockpar/errors.hpp"

// Update-mode data model. A block-parallel mode is a partitioned order: a set
// of o-blocks (ordered sequences of distinct automata) covering [0,n). A
// block-sequential mode, and any phi-image, is a sequence of blocks (sets).
// Automaton indices are 0-based throughout.

namespace blockpar {

// Storage is canonical: o-blocks sorted by (length, first element). The order
// of o-blocks carries no meaning; the order *within* an o-block does.
struct PartitionedOrder {
    int n = 0;
    std::vector<std::vector<int>> oblocks;

    auto operator<=>(const PartitionedOrder&) const = default;
};

// Sequence of blocks, each stored as a sorted index list. Blocks may repeat
// automata across positions (phi-images do); being an ordered partition is a
// predicate, not an invariant.
struct BlockSequence {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    auto operator<=>(const BlockSequence&) const = default;
};

// O-blocks grouped by length: by_size[j] holds the rows of the j-column
// matrix, sorted ascending by first element.
struct MatrixRepresentation {
    int n = 0;
    std::map<int, std::vector<std::vector<int>>> by_size;
};

inline PartitionedOrder make_partitioned_order(int n, std::vector<std::vector<int>> oblocks) {
    if (n < 1) throw std::invalid_argument("partitioned order needs n >= 1");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& ob : oblocks) {
        if (ob.empty()) throw std::invalid_argument("empty o-block");
        for (int i : ob) {
            if (i < 0 || i >= n) throw std::invalid_argument("automaton index out of range");
            if (seen[static_cast<std::size_t>(i)])
                throw std::invalid_argument("automaton appears twice in partitioned order");
            seen[static_cast<std::size_t>(i)] = 1;
        }
    }
    for (char s : seen) {
        if (!s) throw std::invalid_argument("partitioned order does not cover all automata");
    }
    std::sort(oblocks.begin(), oblocks.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front() < b.front();
    });
    return PartitionedOrder{n, std::move(oblocks)};
}

inline BlockSequence make_block_sequence(int n, std::vector<std::vector<int>> blocks) {
    if (n < 1) throw std::invalid_argument("block sequence needs n >= 1");
    if (blocks.empty()) throw std::invalid_argument("block sequence needs at least one block");
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("empty block");
        std::sort(b.begin(), b.end());
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (b[k] < 0 || b[k] >= n) throw std::invalid_argument("automaton index out of range");
            if (k > 0 && b[k] == b[k - 1])
                throw std::invalid_argument("automaton repeated within a block");
        }
    }
    return BlockSequence{n, std::move(blocks)};
}

inline int oblock_length_lcm(const PartitionedOrder& mu) {
    int p = 1;
    for (const auto& ob : mu.oblocks) p = std::lcm(p, static_cast<int>(ob.size()));
    return p;
}

// Rewrites a partitioned order as its sequence-of-blocks form: p = lcm of the
// o-block lengths, and block l collects entry (l mod length) of every o-block.
inline BlockSequence phi(const PartitionedOrder& mu) {
    const int p = oblock_length_lcm(mu);
    BlockSequence bs;
    bs.n = mu.n;
    bs.blocks.reserve(static_cast<std::size_t>(p));
    for (int l = 0; l < p; ++l) {
        std::vector<int> block;
        block.reserve(mu.oblocks.size());
        for (const auto& ob : mu.oblocks) {
            block.push_back(ob[static_cast<std::size_t>(l) % ob.size()]);
        }
        std::sort(block.begin(), block.end());
        bs.blocks.push_back(std::move(block));
    }
    return bs;
}

inline bool is_ordered_partition(const BlockSequence& bs) {
    std::vector<int> count(static_cast<std::size_t>(bs.n), 0);
    for (const auto& b : bs.blocks) {
        for (int i : b) ++count[static_cast<std::size_t>(i)];
    }
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

// Membership in BS_n ∩ φ(BP_n): an ordered partition whose blocks all have
// the same size.
inline bool in_intersection(const BlockSequence& bs) {
    if (!is_ordered_partition(bs)) return false;
    const std::size_t s = bs.blocks.front().size();
    return std::all_of(bs.blocks.begin(), bs.blocks.end(),
                       [s](const auto& b) { return b.size() == s; });
}

// Section of phi on the intersection: number the elements of each block
// ascending and thread entry k of every block into o-block S_k.
inline PartitionedOrder phi_section(const BlockSequence& bs) {
    if (!in_intersection(bs)) {
        throw std::invalid_argument("phi_section needs an equal-block-size ordered partition");
    }
    const std::size_t s = bs.blocks.front().size();
    const std::size_t p = bs.blocks.size();
    std::vector<std::vector<int>> oblocks(s);
    for (std::size_t k = 0; k < s; ++k) {
        oblocks[k].reserve(p);
        for (std::size_t l = 0; l < p; ++l) {
            oblocks[k].push_back(bs.blocks[l][k]);
        }
    }
    return make_partitioned_order(bs.n, std::move(oblocks));
}

inline MatrixRepresentation matrix_repr(const PartitionedOrder& mu) {
    MatrixRepresentation repr;
    repr.n = mu.n;
    for (const auto& ob : mu.oblocks) {
        repr.by_size[static_cast<int>(ob.size())].push_back(ob);
    }
    // Canonical storage already orders rows by first element within a length.
    for (auto& [j, rows] : repr.by_size) {
        std::sort(rows.begin(), rows.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }
    return repr;
}

inline void require_same_n(const PartitionedOrder& a, const PartitionedOrder& b) {
    if (a.n != b.n) throw std::invalid_argument("modes have different automaton counts");
}

// Identical dynamics for every network: equality of the phi-images.
inline bool equiv0(const PartitionedOrder& mu, const PartitionedOrder& mu2) {
    require_same_n(mu, mu2);
    return phi(mu) == phi(mu2);
}

// Isomorphic limit dynamics for every network: phi-images equal up to a
// circular shift. Returns the smallest shift k with phi(mu) = sigma^k(phi(mu2)),
// where sigma^k moves the element at position 0 towards position k.
inline std::optional<int> equiv_star(const PartitionedOrder& mu, const PartitionedOrder& mu2) {
    require_same_n(mu, mu2);
    const BlockSequence b1 = phi(mu);
    const BlockSequence b2 = phi(mu2);
    const int p = static_cast<int>(b1.blocks.size());
    if (p != static_cast<int>(b2.blocks.size())) return std::nullopt;
    for (int k = 0; k < p; ++k) {
        bool match = true;
        for (int l = 0; l < p && match; ++l) {
            match = b1.blocks[static_cast<std::size_t>(l)] ==
                    b2.blocks[static_cast<std::size_t>((l - k + p) % p)];
        }
        if (match) return k;
    }
    return std::nullopt;
}

// Canonical representative of a mode itself: the normalized storage order.
inline PartitionedOrder canonical_bp(PartitionedOrder mu) {
    return make_partitioned_order(mu.n, std::move(mu.oblocks));
}

// Canonical representative of the dynamics-equality class: sort every matrix
// column ascending. Two modes have equal phi-images iff these keys are equal.
inline PartitionedOrder canonical_bp0(const PartitionedOrder& mu) {
    const MatrixRepresentation repr = matrix_repr(mu);
    std::vector<std::vector<int>> oblocks;
    oblocks.reserve(mu.oblocks.size());
    for (const auto& [j, rows] : repr.by_size) {
        const std::size_t m = rows.size();
        std::vector<std::vector<int>> sorted_rows(m, std::vector<int>(static_cast<std::size_t>(j)));
        std::vector<int> column(m);
        for (int c = 0; c < j; ++c) {
            for (std::size_t r = 0; r < m; ++r) column[r] = rows[r][static_cast<std::size_t>(c)];
            std::sort(column.begin(), column.end());
            for (std::size_t r = 0; r < m; ++r) sorted_rows[r][static_cast<std::size_t>(c)] = column[r];
        }
        for (auto& row : sorted_rows) oblocks.push_back(std::move(row));
    }
    return make_partitioned_order(mu.n, std::move(oblocks));
}

// Canonical representative of the limit-isomorphism class: the
// lexicographically minimal rotation of the phi-image. Representation
// independent, unlike the generator's pruning constraints.
inline BlockSequence canonical_bpstar(const PartitionedOrder& mu) {
    const BlockSequence b = phi(mu);
    const int p = static_cast<int>(b.blocks.size());
    BlockSequence best = b;
    BlockSequence candidate = b;
    for (int k = 1; k < p; ++k) {
        for (int l = 0; l < p; ++l) {
            candidate.blocks[static_cast<std::size_t>(l)] =
                b.blocks[static_cast<std::size_t>((l - k + p) % p)];
        }
        if (candidate.blocks < best.blocks) best = candidate;
    }
    return best;
}

// Substep at which each automaton is updated for the first time.
inline std::vector<int> first_update_times(const BlockSequence& bs) {
    std::vector<int> t(static_cast<std::size_t>(bs.n), -1);
    for (std::size_t l = 0; l < bs.blocks.size(); ++l) {
        for (int i : bs.blocks[l]) {
            if (t[static_cast<std::size_t>(i)] < 0) t[static_cast<std::size_t>(i)] = static_cast<int>(l);
        }
    }
    return t;
}

// --- text grammar ---------------------------------------------------------
//
// Block-parallel modes read and print as `{(0),(2,1)}`; block sequences as
// `({1},{0,2})`. Whitespace is insignificant. Printing uses canonical order:
// o-blocks by (length, first element), set elements ascending.

namespace detail {

struct TextCursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                     text[pos] == '\n' || text[pos] == '\r')) {
            ++pos;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos);
        }
        ++pos;
    }

    int expect_index() {
        skip_ws();
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') {
            throw ParseError("expected automaton index", pos);
        }
        long value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + (text[pos] - '0');
            if (value > 1'000'000) throw ParseError("automaton index too large", pos);
            ++pos;
        }
        return static_cast<int>(value);
    }

    void expect_end() {
        skip_ws();
        if (pos < text.size()) throw ParseError("trailing characters after mode", pos);
    }
};

inline int max_index(const std::vector<std::vector<int>>& groups) {
    int m = -1;
    for (const auto& g : groups) {
        for (int i : g) m = std::max(m, i);
    }
    return m;
}

}  // namespace detail

inline PartitionedOrder parse_partitioned_order(std::string_view text) {
    detail::TextCursor c{text};
    c.expect('{');
    std::vector<std::vector<int>> oblocks;
    do {
        c.expect('(');
        std::vector<int> seq;
        do {
            seq.push_back(c.expect_index());
        } while (c.eat(','));
        c.expect(')');
        oblocks.push_back(std::move(seq));
    } while (c.eat(','));
    c.expect('}');
    c.expect_end();
    const int n = detail::max_index(oblocks) + 1;
    return make_partitioned_order(n, std::move(oblocks));
}

inline BlockSequence parse_block_sequence(std::string_view text) {
    detail::TextCursor c{text};
    c.expect('(');
    std::vector<std::vector<int>> blocks;
    do {
        c.skip_ws();
        const std::size_t block_start = c.pos;
        c.expect('{');
        std::vector<int> block;
        do {
            block.push_back(c.expect_index());
        } while (c.eat(','));
        c.expect('}');
        std::sort(block.begin(), block.end());
        if (std::adjacent_find(block.begin(), block.end()) != block.end()) {
            throw ParseError("automaton repeated within a block", block_start);
        }
        blocks.push_back(std::move(block));
    } while (c.eat(','));
    c.expect(')');
    c.expect_end();
    const int n = detail::max_index(blocks) + 1;
    return make_block_sequence(n, std::move(blocks));
}

inline std::string to_string(const PartitionedOrder& mu) {
    std::string out = "{";
    for (std::size_t k = 0; k < mu.oblocks.size(); ++k) {
        if (k > 0) out += ',';
        out += '(';
        for (std::size_t l = 0; l < mu.oblocks[k].size(); ++l) {
            if (l > 0) out += ',';
            out += std::to_string(mu.oblocks[k][l]);
        }
        out += ')';
    }
    out += '}';
    return out;
}

inline std::string to_string(const BlockSequence& bs) {
    std::string out = "(";
    for (std::size_t k = 0; k < bs.blocks.size(); ++k) {
        if (k > 0) out += ',';
        out += '{';
        for (std::size_t l = 0; l < bs.blocks[k].size(); ++l) {
            if (l > 0) out += ',';
            out += std::to_string(bs.blocks[k][l]);
        }
        out += '}';
    }
    out += ')';
    return out;
}

}  // namespace blockpar
