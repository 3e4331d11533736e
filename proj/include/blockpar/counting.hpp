#pragma once

#include <stdexcept>
#include <vector>

#include "blockpar/bigint.hpp"
#include "blockpar/partitions.hpp"

// Exact counts of update-mode families, each evaluated through every closed
// formula we know for it. The alternate routes are cross-checked on every
// call; a mismatch throws std::logic_error since it can only mean a bug.

namespace blockpar {

enum class ModeClass { bp, bp0, bpstar };

namespace detail {

inline void require_positive(int n, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + " needs n >= 1");
}

}  // namespace detail

// Ordered Bell numbers |BS_n|, via the partition-indexed sum: place the n
// automata into the blocks of each partition shape, then order the blocks.
inline BigCount count_bs(int n) {
    detail::require_positive(n, "count_bs");
    FactorialTable fact(n);
    BigCount total = 0;
    PartitionStream ps(n);
    while (ps.next()) {
        const PartitionStats st = part_stats(ps.current());
        BigCount fill_den = 1;
        BigCount order_den = 1;
        int block_count = 0;
        for (int j = 1; j <= st.d; ++j) {
            const int mj = st.m(j);
            for (int r = 0; r < mj; ++r) fill_den *= fact(j);
            order_den *= fact(mj);
            block_count += mj;
        }
        total += exact_div(fact(n), fill_den, "count_bs fill") *
                 exact_div(fact(block_count), order_den, "count_bs order");
    }
    return total;
}

// |BS_n ∩ φ(BP_n)|: ordered partitions of n labelled items into equal-size
// labelled boxes, one term per divisor of n.
inline BigCount count_bs_inter_bp(int n) {
    detail::require_positive(n, "count_bs_inter_bp");
    FactorialTable fact(n);
    BigCount total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        BigCount den = 1;
        for (int b = 0; b < d; ++b) den *= fact(n / d);
        total += exact_div(fact(n), den, "count_bs_inter_bp");
    }
    return total;
}

// Per-partition term of the |BP_n| row-permutation formula.
inline BigCount count_bp_term(int n, const PartitionStats& st, const FactorialTable& fact) {
    BigCount den = 1;
    for (int j = 1; j <= st.d; ++j) den *= fact(st.m(j));
    return exact_div(fact(n), den, "count_bp term");
}

// Per-partition term of the |BP_n^0| column-permutation formula.
inline BigCount count_bp0_term(int n, const PartitionStats& st, const FactorialTable& fact) {
    BigCount den = 1;
    for (int j = 1; j <= st.d; ++j) {
        for (int l = 0; l < j; ++l) den *= fact(st.m(j));
    }
    return exact_div(fact(n), den, "count_bp0 term");
}

// Per-partition term of |BP_n^*|: the BP^0 term splits into classes of
// exactly lcm(part sizes) elements each.
inline BigCount count_bpstar_term(int n, const PartitionStats& st, const FactorialTable& fact) {
    return exact_div(count_bp0_term(n, st, fact), BigCount(st.lcm),
                     "count_bpstar class size");
}

inline BigCount count_class_for_partition(ModeClass cls, int n, const IntegerPartition& part) {
    FactorialTable fact(n);
    const PartitionStats st = part_stats(part);
    switch (cls) {
        case ModeClass::bp: return count_bp_term(n, st, fact);
        case ModeClass::bp0: return count_bp0_term(n, st, fact);
        case ModeClass::bpstar: return count_bpstar_term(n, st, fact);
    }
    throw std::invalid_argument("unknown mode class");
}

// |BP_n| ("sets of lists"), evaluated both as the row-permutation sum and as
// the binomial product over matrices.
inline BigCount count_bp(int n) {
    detail::require_positive(n, "count_bp");
    FactorialTable fact(n);
    BigCount via_rows = 0;
    BigCount via_binomials = 0;
    PartitionStream ps(n);
    while (ps.next()) {
        const PartitionStats st = part_stats(ps.current());
        via_rows += count_bp_term(n, st, fact);

        BigCount prod = 1;
        int remaining = n;
        for (int j = 1; j <= st.d; ++j) {
            const int mj = st.m(j);
            if (mj == 0) continue;
            prod *= fact.binomial(remaining, j * mj);
            prod *= exact_div(fact(j * mj), fact(mj), "count_bp binomial form");
            remaining -= j * mj;
        }
        via_binomials += prod;
    }
    if (via_rows != via_binomials) {
        throw std::logic_error("count_bp: alternate formulas disagree");
    }
    return via_rows;
}

// |BP_n^0|, evaluated through all three equivalent formulas: column
// permutations, per-column choices, and per-matrix choices.
inline BigCount count_bp0(int n) {
    detail::require_positive(n, "count_bp0");
    FactorialTable fact(n);
    BigCount f1 = 0, f2 = 0, f3 = 0;
    PartitionStream ps(n);
    while (ps.next()) {
        const PartitionStats st = part_stats(ps.current());
        f1 += count_bp0_term(n, st, fact);

        BigCount per_column = 1;
        BigCount per_matrix = 1;
        int remaining = n;
        for (int j = 1; j <= st.d; ++j) {
            const int mj = st.m(j);
            if (mj == 0) continue;
            for (int l = 1; l <= j; ++l) {
                per_column *= fact.binomial(remaining - (l - 1) * mj, mj);
                per_matrix *= fact.binomial((j - l + 1) * mj, mj);
            }
            per_matrix *= fact.binomial(remaining, j * mj);
            remaining -= j * mj;
        }
        f2 += per_column;
        f3 += per_matrix;
    }
    if (f1 != f2 || f2 != f3) {
        throw std::logic_error("count_bp0: alternate formulas disagree");
    }
    return f1;
}

// |BP_n^*|: one representative per class of modes with identical limit
// dynamics up to isomorphism. Each per-partition term must divide exactly.
inline BigCount count_bpstar(int n) {
    detail::require_positive(n, "count_bpstar");
    FactorialTable fact(n);
    BigCount total = 0;
    PartitionStream ps(n);
    while (ps.next()) {
        total += count_bpstar_term(n, part_stats(ps.current()), fact);
    }
    return total;
}

// Truncated power-series evaluation of the generating function
// prod_{j>=1} sum_{k>=0} (x^k/k!)^j with exact rational coefficients;
// returns coefficient(x^n) * n! for n = 1..max_n. Matches count_bp0 termwise.
inline std::vector<BigCount> egf_bp0_check(int max_n) {
    detail::require_positive(max_n, "egf_bp0_check");
    FactorialTable fact(max_n);
    std::vector<BigRational> coeff(static_cast<std::size_t>(max_n) + 1);
    coeff[0] = 1;
    for (int j = 1; j <= max_n; ++j) {
        // Factor for size j has support only on degrees j*k.
        std::vector<BigRational> factor;
        for (int k = 0; j * k <= max_n; ++k) {
            BigRational c(1);
            for (int rep = 0; rep < j; ++rep) c /= BigRational(fact(k));
            factor.push_back(c);
        }
        std::vector<BigRational> product(coeff.size());
        for (std::size_t deg = 0; deg < coeff.size(); ++deg) {
            if (coeff[deg] == 0) continue;
            for (std::size_t k = 0; k < factor.size(); ++k) {
                const std::size_t target = deg + k * static_cast<std::size_t>(j);
                if (target > static_cast<std::size_t>(max_n)) break;
                product[target] += coeff[deg] * factor[k];
            }
        }
        coeff = std::move(product);
    }
    std::vector<BigCount> out;
    out.reserve(static_cast<std::size_t>(max_n));
    for (int n = 1; n <= max_n; ++n) {
        const BigRational scaled = coeff[static_cast<std::size_t>(n)] * BigRational(fact(n));
        if (boost::multiprecision::denominator(scaled) != 1) {
            throw std::logic_error("egf_bp0_check: non-integer coefficient");
        }
        out.emplace_back(boost::multiprecision::numerator(scaled));
    }
    return out;
}

}  // namespace blockpar
