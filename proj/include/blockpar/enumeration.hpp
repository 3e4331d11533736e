#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blockpar/counting.hpp"
#include "blockpar/errors.hpp"
#include "blockpar/modes.hpp"
#include "blockpar/partitions.hpp"

// Streaming generators for BP_n, BP_n^0 and BP_n^* as explicit iterative
// state machines: a stack of choice points (content combination + matrix
// filling per part size) that can be suspended, resumed, and sharded by
// partition index. Output is grouped by generating partition, partitions in
// PartitionStream order; sub-generators advance lexicographically.

namespace blockpar {

namespace detail {

inline std::vector<int> sorted_difference(const std::vector<int>& pool,
                                          const std::vector<int>& chosen) {
    std::vector<int> out;
    out.reserve(pool.size() - chosen.size());
    std::set_difference(pool.begin(), pool.end(), chosen.begin(), chosen.end(),
                        std::back_inserter(out));
    return out;
}

// Lexicographic k-combinations of a sorted pool. The forced variant always
// includes one designated element (choosing k-1 from the rest).
class CombinationGen {
public:
    void reset(std::vector<int> pool, int k) {
        base_ = std::move(pool);
        k_ = k;
        forced_ = std::nullopt;
        start();
    }

    void reset_forced(const std::vector<int>& pool, int k, int forced_value) {
        base_.clear();
        base_.reserve(pool.size() - 1);
        for (int v : pool) {
            if (v != forced_value) base_.push_back(v);
        }
        k_ = k - 1;
        forced_ = forced_value;
        start();
    }

    bool next() {
        if (fresh_) {
            fresh_ = false;
            build_value();
            return true;
        }
        int i = k_ - 1;
        const int limit = static_cast<int>(base_.size()) - k_;
        while (i >= 0 && idx_[static_cast<std::size_t>(i)] == limit + i) --i;
        if (i < 0) return false;
        ++idx_[static_cast<std::size_t>(i)];
        for (int l = i + 1; l < k_; ++l) {
            idx_[static_cast<std::size_t>(l)] = idx_[static_cast<std::size_t>(l - 1)] + 1;
        }
        build_value();
        return true;
    }

    const std::vector<int>& value() const { return value_; }

private:
    void start() {
        idx_.resize(static_cast<std::size_t>(k_));
        std::iota(idx_.begin(), idx_.end(), 0);
        fresh_ = true;
    }

    void build_value() {
        value_.clear();
        value_.reserve(static_cast<std::size_t>(k_) + (forced_ ? 1 : 0));
        for (int i = 0; i < k_; ++i) {
            value_.push_back(base_[static_cast<std::size_t>(idx_[static_cast<std::size_t>(i)])]);
        }
        if (forced_) {
            value_.insert(std::lower_bound(value_.begin(), value_.end(), *forced_), *forced_);
        }
    }

    std::vector<int> base_;
    std::vector<int> idx_;
    std::vector<int> value_;
    std::optional<int> forced_;
    int k_ = 0;
    bool fresh_ = true;
};

// Permutations of a set of distinct values, lexicographic.
class PermutationGen {
public:
    void reset(std::vector<int> values) {
        value_ = std::move(values);
        fresh_ = true;
    }

    bool next() {
        if (fresh_) {
            fresh_ = false;
            return true;
        }
        return std::next_permutation(value_.begin(), value_.end());
    }

    const std::vector<int>& value() const { return value_; }

private:
    std::vector<int> value_;
    bool fresh_ = true;
};

// Fills one matrix (rows_count rows of length cols) from a fixed content set.
//
//  row_permutations       all fillings up to row order: first column is a
//                         sorted combination, the rest a permutation.
//  column_sets            one filling per choice of column contents.
//  column_sets_min_first  column_sets, with the content minimum forced to
//                         appear within the first min_col_bound columns.
class MatrixFiller {
public:
    enum class Rule { row_permutations, column_sets, column_sets_min_first };

    void reset(Rule rule, int cols, int rows_count, std::vector<int> content,
               int min_col_bound = 0) {
        rule_ = rule;
        cols_ = cols;
        rows_count_ = rows_count;
        content_ = std::move(content);
        min_bound_ = min_col_bound;
        min_value_ = content_.empty() ? -1 : content_.front();
        rows_.assign(static_cast<std::size_t>(rows_count_),
                     std::vector<int>(static_cast<std::size_t>(cols_)));
        fresh_ = true;
    }

    bool next() {
        if (fresh_) {
            fresh_ = false;
            if (rule_ == Rule::row_permutations) {
                first_col_.reset(content_, rows_count_);
                first_col_.next();
                rest_.reset(sorted_difference(content_, first_col_.value()));
                rest_.next();
                rebuild_from_permutation();
            } else {
                columns_.assign(static_cast<std::size_t>(cols_), CombinationGen{});
                column_pool_.assign(static_cast<std::size_t>(cols_), {});
                start_columns_from(0);
                rebuild_from_columns();
            }
            return true;
        }
        if (rule_ == Rule::row_permutations) {
            if (rest_.next()) {
                rebuild_from_permutation();
                return true;
            }
            if (first_col_.next()) {
                rest_.reset(sorted_difference(content_, first_col_.value()));
                rest_.next();
                rebuild_from_permutation();
                return true;
            }
            return false;
        }
        for (int c = cols_ - 1; c >= 0; --c) {
            if (columns_[static_cast<std::size_t>(c)].next()) {
                start_columns_from(c + 1);
                rebuild_from_columns();
                return true;
            }
        }
        return false;
    }

    const std::vector<std::vector<int>>& rows() const { return rows_; }

private:
    void start_columns_from(int c) {
        for (; c < cols_; ++c) {
            auto& pool = column_pool_[static_cast<std::size_t>(c)];
            pool = (c == 0) ? content_
                            : sorted_difference(column_pool_[static_cast<std::size_t>(c - 1)],
                                                columns_[static_cast<std::size_t>(c - 1)].value());
            auto& gen = columns_[static_cast<std::size_t>(c)];
            const bool force_min = rule_ == Rule::column_sets_min_first &&
                                   c + 1 == min_bound_ &&
                                   std::binary_search(pool.begin(), pool.end(), min_value_);
            if (force_min) {
                gen.reset_forced(pool, rows_count_, min_value_);
            } else {
                gen.reset(pool, rows_count_);
            }
            gen.next();
        }
    }

    void rebuild_from_columns() {
        for (int c = 0; c < cols_; ++c) {
            const auto& col = columns_[static_cast<std::size_t>(c)].value();
            for (int r = 0; r < rows_count_; ++r) {
                rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    col[static_cast<std::size_t>(r)];
            }
        }
    }

    void rebuild_from_permutation() {
        const auto& first = first_col_.value();
        const auto& rest = rest_.value();
        for (int r = 0; r < rows_count_; ++r) {
            rows_[static_cast<std::size_t>(r)][0] = first[static_cast<std::size_t>(r)];
            for (int c = 1; c < cols_; ++c) {
                rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    rest[static_cast<std::size_t>(r * (cols_ - 1) + c - 1)];
            }
        }
    }

    Rule rule_ = Rule::row_permutations;
    int cols_ = 0;
    int rows_count_ = 0;
    int min_bound_ = 0;
    int min_value_ = -1;
    std::vector<int> content_;
    CombinationGen first_col_;
    PermutationGen rest_;
    std::vector<CombinationGen> columns_;
    std::vector<std::vector<int>> column_pool_;
    std::vector<std::vector<int>> rows_;
    bool fresh_ = true;
};

// One choice point per part size with nonzero multiplicity: which elements the
// matrix takes, then how they are arranged.
struct EnumFrame {
    int j = 0;       // part size / column count
    int m = 0;       // multiplicity / row count
    int min_bound = 0;  // rotation-pruning bound for the * generator
    std::vector<int> pool;
    CombinationGen content;
    MatrixFiller filler;
};

}  // namespace detail

struct StreamOptions {
    std::optional<int> only_partition;    // 0-based index into the partition stream
    std::optional<std::uint64_t> limit;   // stop after this many modes
};

class ModeStream {
public:
    ModeStream(ModeClass cls, int n, StreamOptions options = {})
        : cls_(cls), n_(n), options_(options), partitions_(n) {
        mode_.n = n;
    }

    bool next() {
        if (exhausted_) return false;
        if (options_.limit && produced_ >= *options_.limit) {
            exhausted_ = true;
            return false;
        }
        bool have = false;
        if (!started_) {
            started_ = true;
            have = start_next_partition();
        } else {
            have = advance_within_partition() || start_next_partition();
        }
        if (!have) {
            exhausted_ = true;
            return false;
        }
        rebuild_mode();
        ++produced_;
        return true;
    }

    const PartitionedOrder& mode() const { return mode_; }
    const IntegerPartition& partition() const { return partition_; }
    int partition_index() const { return partition_index_; }

private:
    detail::MatrixFiller::Rule fill_rule() const {
        switch (cls_) {
            case ModeClass::bp: return detail::MatrixFiller::Rule::row_permutations;
            case ModeClass::bp0: return detail::MatrixFiller::Rule::column_sets;
            case ModeClass::bpstar: return detail::MatrixFiller::Rule::column_sets_min_first;
        }
        throw std::invalid_argument("unknown mode class");
    }

    bool start_next_partition() {
        while (partitions_.next()) {
            if (options_.only_partition) {
                if (partitions_.index() < *options_.only_partition) continue;
                if (partitions_.index() > *options_.only_partition) return false;
            }
            partition_ = partitions_.current();
            partition_index_ = partitions_.index();
            build_frames();
            return true;
        }
        return false;
    }

    // Coefficients a[j] of the rotation pruning: gcd of j with the lcm of the
    // larger part sizes already placed, computed from d down to 1.
    static std::vector<int> min_column_bounds(const PartitionStats& st) {
        std::vector<int> a(static_cast<std::size_t>(st.d) + 1, 0);
        int b = 1;
        for (int j = st.d; j >= 1; --j) {
            if (st.m(j) > 0) {
                a[static_cast<std::size_t>(j)] = std::gcd(b, j);
                b = std::lcm(b, j);
            } else {
                a[static_cast<std::size_t>(j)] = j;
            }
        }
        return a;
    }

    void build_frames() {
        const PartitionStats st = part_stats(partition_);
        const std::vector<int> bounds = min_column_bounds(st);
        frames_.clear();
        for (int j = 1; j <= st.d; ++j) {
            if (st.m(j) == 0) continue;
            detail::EnumFrame frame;
            frame.j = j;
            frame.m = st.m(j);
            frame.min_bound = bounds[static_cast<std::size_t>(j)];
            frames_.push_back(std::move(frame));
        }
        init_frames_from(0);
    }

    void init_frames_from(std::size_t k) {
        for (; k < frames_.size(); ++k) {
            auto& f = frames_[k];
            if (k == 0) {
                f.pool.resize(static_cast<std::size_t>(n_));
                std::iota(f.pool.begin(), f.pool.end(), 0);
            } else {
                const auto& prev = frames_[k - 1];
                f.pool = detail::sorted_difference(prev.pool, prev.content.value());
            }
            f.content.reset(f.pool, f.j * f.m);
            f.content.next();
            f.filler.reset(fill_rule(), f.j, f.m, f.content.value(), f.min_bound);
            f.filler.next();
        }
    }

    bool advance_within_partition() {
        for (std::size_t k = frames_.size(); k-- > 0;) {
            auto& f = frames_[k];
            if (f.filler.next()) {
                init_frames_from(k + 1);
                return true;
            }
            if (f.content.next()) {
                f.filler.reset(fill_rule(), f.j, f.m, f.content.value(), f.min_bound);
                f.filler.next();
                init_frames_from(k + 1);
                return true;
            }
        }
        return false;
    }

    void rebuild_mode() {
        // Frames ascend by part size and fillers keep first columns sorted, so
        // the o-blocks land in canonical (length, first element) order.
        mode_.oblocks.clear();
        for (const auto& f : frames_) {
            for (const auto& row : f.filler.rows()) {
                mode_.oblocks.push_back(row);
            }
        }
    }

    ModeClass cls_;
    int n_;
    StreamOptions options_;
    PartitionStream partitions_;
    IntegerPartition partition_;
    int partition_index_ = -1;
    std::vector<detail::EnumFrame> frames_;
    PartitionedOrder mode_;
    std::uint64_t produced_ = 0;
    bool started_ = false;
    bool exhausted_ = false;
};

inline ModeStream enum_bp(int n, StreamOptions options = {}) {
    return ModeStream(ModeClass::bp, n, options);
}

inline ModeStream enum_bp0(int n, StreamOptions options = {}) {
    return ModeStream(ModeClass::bp0, n, options);
}

inline ModeStream enum_bpstar(int n, StreamOptions options = {}) {
    return ModeStream(ModeClass::bpstar, n, options);
}

// --- brute-force oracles ---------------------------------------------------

inline constexpr int kOracleMaxAutomata = 7;

namespace detail {

template <typename Fn>
void for_each_set_partition(int n, Fn&& fn) {
    std::vector<std::vector<int>> parts;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            fn(parts);
            return;
        }
        // Index-based: recursion grows and shrinks `parts`, invalidating
        // iterators but not positions below the current size.
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
}

}  // namespace detail

// Ground truth for enum_bp: every set partition of [0,n), every ordering of
// every part, canonicalized and deduplicated.
inline std::set<PartitionedOrder> oracle_enum_bp(int n) {
    if (n < 1) throw std::invalid_argument("oracle_enum_bp needs n >= 1");
    if (n > kOracleMaxAutomata) {
        throw RefusalError("oracle_enum_bp is limited to n <= " +
                           std::to_string(kOracleMaxAutomata));
    }
    std::set<PartitionedOrder> out;
    detail::for_each_set_partition(n, [&](const std::vector<std::vector<int>>& parts) {
        std::vector<std::vector<int>> ordering(parts.size());
        auto rec = [&](auto&& self, std::size_t k) -> void {
            if (k == parts.size()) {
                out.insert(make_partitioned_order(n, ordering));
                return;
            }
            std::vector<int> perm = parts[k];
            std::sort(perm.begin(), perm.end());
            do {
                ordering[k] = perm;
                self(self, k + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        rec(rec, 0);
    });
    return out;
}

enum class Relation { eq0, star };

// Distinct canonical class keys over the brute-force mode set, rendered in
// the text grammar.
inline std::set<std::string> oracle_quotient(int n, Relation rel) {
    std::set<std::string> keys;
    for (const PartitionedOrder& mu : oracle_enum_bp(n)) {
        if (rel == Relation::eq0) {
            keys.insert(to_string(canonical_bp0(mu)));
        } else {
            keys.insert(to_string(canonical_bpstar(mu)));
        }
    }
    return keys;
}

}  // namespace blockpar
