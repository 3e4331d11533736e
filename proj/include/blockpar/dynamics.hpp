#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blockpar/errors.hpp"
#include "blockpar/modes.hpp"

// Finite automata-network semantics. Local functions are explicit tables
// indexed by configuration: bit-exact, alphabet-generic, and directly
// serializable. Configuration indices use a mixed-radix layout with automaton
// 0 most significant; the file format depends on this encoding.

namespace blockpar {

inline constexpr std::size_t kMaxConfigurations = std::size_t{1} << 24;

struct AutomataNetwork {
    std::vector<int> alphabets;            // |X_i| >= 1
    std::vector<std::vector<int>> tables;  // tables[i][encode(x)] = f_i(x)

    int size() const { return static_cast<int>(alphabets.size()); }
};

struct ConfigSpace {
    std::vector<int> alphabets;
    std::vector<std::size_t> strides;
    std::size_t count = 1;

    explicit ConfigSpace(std::vector<int> alphabet_sizes)
        : alphabets(std::move(alphabet_sizes)) {
        if (alphabets.empty()) throw std::invalid_argument("network needs at least one automaton");
        strides.assign(alphabets.size(), 1);
        for (std::size_t i = alphabets.size(); i-- > 0;) {
            if (alphabets[i] < 1) throw std::invalid_argument("alphabet size must be >= 1");
            if (i + 1 < alphabets.size()) {
                strides[i] = strides[i + 1] * static_cast<std::size_t>(alphabets[i + 1]);
            }
            if (count > kMaxConfigurations / static_cast<std::size_t>(alphabets[i])) {
                throw RefusalError("configuration space exceeds the tabulation guard");
            }
            count *= static_cast<std::size_t>(alphabets[i]);
        }
    }

    std::size_t encode(const std::vector<int>& x) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < alphabets.size(); ++i) {
            idx += static_cast<std::size_t>(x[i]) * strides[i];
        }
        return idx;
    }

    void decode_into(std::size_t idx, std::vector<int>& x) const {
        x.resize(alphabets.size());
        for (std::size_t i = 0; i < alphabets.size(); ++i) {
            x[i] = static_cast<int>((idx / strides[i]) % static_cast<std::size_t>(alphabets[i]));
        }
    }

    std::vector<int> decode(std::size_t idx) const {
        std::vector<int> x;
        decode_into(idx, x);
        return x;
    }
};

// Digit string for a configuration, e.g. "211"; '.'-separated when some
// alphabet does not fit a single digit.
inline std::string config_label(const ConfigSpace& space, std::size_t idx) {
    const std::vector<int> x = space.decode(idx);
    const bool compact =
        std::all_of(space.alphabets.begin(), space.alphabets.end(), [](int a) { return a <= 10; });
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!compact && i > 0) out += '.';
        out += std::to_string(x[i]);
    }
    return out;
}

inline void validate_network(const AutomataNetwork& net) {
    const ConfigSpace space(net.alphabets);  // also enforces the size guard
    if (net.tables.size() != net.alphabets.size()) {
        throw std::invalid_argument("network needs one table per automaton");
    }
    for (std::size_t i = 0; i < net.tables.size(); ++i) {
        if (net.tables[i].size() != space.count) {
            throw std::invalid_argument("table " + std::to_string(i) +
                                        " must have one entry per configuration");
        }
        for (int v : net.tables[i]) {
            if (v < 0 || v >= net.alphabets[i]) {
                throw std::invalid_argument("table " + std::to_string(i) +
                                            " contains a value outside the alphabet");
            }
        }
    }
}

// Tabulates explicit local functions. This is the one place formulas appear;
// everything downstream consumes tables.
inline AutomataNetwork make_network(
    std::vector<int> alphabets,
    const std::vector<std::function<int(const std::vector<int>&)>>& local_rules) {
    const ConfigSpace space(alphabets);
    if (local_rules.size() != alphabets.size()) {
        throw std::invalid_argument("need one local rule per automaton");
    }
    AutomataNetwork net;
    net.alphabets = std::move(alphabets);
    net.tables.assign(net.alphabets.size(), {});
    std::vector<int> x;
    for (std::size_t i = 0; i < net.tables.size(); ++i) {
        net.tables[i].resize(space.count);
    }
    for (std::size_t idx = 0; idx < space.count; ++idx) {
        space.decode_into(idx, x);
        for (std::size_t i = 0; i < net.tables.size(); ++i) {
            net.tables[i][idx] = local_rules[i](x);
        }
    }
    validate_network(net);
    return net;
}

inline AutomataNetwork identity_network(std::vector<int> alphabets) {
    const ConfigSpace space(alphabets);
    std::vector<std::function<int(const std::vector<int>&)>> rules;
    for (std::size_t i = 0; i < alphabets.size(); ++i) {
        rules.push_back([i](const std::vector<int>& x) { return x[i]; });
    }
    return make_network(std::move(alphabets), rules);
}

// Boolean one-way ring: automaton i copies automaton (i-1) mod n.
inline AutomataNetwork rotation_network(int n) {
    if (n < 1) throw std::invalid_argument("rotation network needs n >= 1");
    std::vector<std::function<int(const std::vector<int>&)>> rules;
    for (int i = 0; i < n; ++i) {
        const int src = (i + n - 1) % n;
        rules.push_back([src](const std::vector<int>& x) { return x[src]; });
    }
    return make_network(std::vector<int>(static_cast<std::size_t>(n), 2), rules);
}

// Three-automaton network over alphabets 3x2x2 whose block-sequential and
// block-parallel dynamics differ in limit-cycle length and attractor status.
inline AutomataNetwork demo_network() {
    std::vector<std::function<int(const std::vector<int>&)>> rules = {
        [](const std::vector<int>& x) {
            if ((x[0] == 0 && x[1] == x[2]) || (x[0] == 1 && x[1] == 1 && x[2] == 1)) return 0;
            if ((x[1] + x[2]) % 2 == 1) return 1;
            return 2;
        },
        [](const std::vector<int>& x) { return (x[0] != 0 || x[1] == 1 || x[2] == 1) ? 1 : 0; },
        [](const std::vector<int>& x) { return ((x[0] == 1 && x[1] == 1) || x[0] == 2) ? 1 : 0; },
    };
    return make_network({3, 2, 2}, rules);
}

inline AutomataNetwork random_network(std::vector<int> alphabets, std::uint64_t seed) {
    const ConfigSpace space(alphabets);
    std::mt19937_64 gen(seed);
    AutomataNetwork net;
    net.alphabets = std::move(alphabets);
    net.tables.assign(net.alphabets.size(), {});
    for (std::size_t i = 0; i < net.tables.size(); ++i) {
        net.tables[i].resize(space.count);
        for (std::size_t idx = 0; idx < space.count; ++idx) {
            net.tables[i][idx] =
                static_cast<int>(gen() % static_cast<std::uint64_t>(net.alphabets[i]));
        }
    }
    return net;
}

// One substep: every automaton of the block reads the same pre-state.
inline std::vector<int> step_block(const AutomataNetwork& net, std::vector<int> x,
                                   const std::vector<int>& block) {
    const ConfigSpace space(net.alphabets);
    const std::size_t idx = space.encode(x);
    for (int i : block) {
        if (i < 0 || i >= net.size()) throw std::invalid_argument("automaton index out of range");
        x[static_cast<std::size_t>(i)] = net.tables[static_cast<std::size_t>(i)][idx];
    }
    return x;
}

namespace detail {

inline void step_block_inplace(const AutomataNetwork& net, const ConfigSpace& space,
                               std::vector<int>& x, const std::vector<int>& block) {
    const std::size_t idx = space.encode(x);
    for (int i : block) {
        x[static_cast<std::size_t>(i)] = net.tables[static_cast<std::size_t>(i)][idx];
    }
}

inline void check_mode_indices(const AutomataNetwork& net, const BlockSequence& mode) {
    if (mode.n > net.size()) {
        throw std::invalid_argument("mode refers to automata the network does not have");
    }
}

}  // namespace detail

// One full step: the blocks applied left to right.
inline std::vector<int> apply_mode(const AutomataNetwork& net, const BlockSequence& mode,
                                   std::vector<int> x) {
    detail::check_mode_indices(net, mode);
    const ConfigSpace space(net.alphabets);
    for (const auto& block : mode.blocks) {
        detail::step_block_inplace(net, space, x, block);
    }
    return x;
}

// Partitioned orders act through their sequence-of-blocks form.
inline std::vector<int> apply_mode(const AutomataNetwork& net, const PartitionedOrder& mode,
                                   std::vector<int> x) {
    if (mode.n != net.size()) {
        throw std::invalid_argument("partitioned order must cover exactly the network's automata");
    }
    return apply_mode(net, phi(mode), std::move(x));
}

// The functional graph of one step over every configuration.
struct DynamicsGraph {
    ConfigSpace space;
    BlockSequence mode;
    std::vector<std::uint32_t> successors;
};

inline DynamicsGraph transition_graph(const AutomataNetwork& net, const BlockSequence& mode) {
    validate_network(net);
    detail::check_mode_indices(net, mode);
    DynamicsGraph g{ConfigSpace(net.alphabets), mode, {}};
    g.successors.resize(g.space.count);
    std::vector<int> x;
    for (std::size_t idx = 0; idx < g.space.count; ++idx) {
        g.space.decode_into(idx, x);
        for (const auto& block : mode.blocks) {
            detail::step_block_inplace(net, g.space, x, block);
        }
        g.successors[idx] = static_cast<std::uint32_t>(g.space.encode(x));
    }
    return g;
}

inline DynamicsGraph transition_graph(const AutomataNetwork& net, const PartitionedOrder& mode) {
    if (mode.n != net.size()) {
        throw std::invalid_argument("partitioned order must cover exactly the network's automata");
    }
    return transition_graph(net, phi(mode));
}

// Limit set and cycle decomposition of a functional graph. Every trajectory
// ends on exactly one cycle; the limit set is the union of cycle supports.
struct LimitStructure {
    std::vector<std::vector<std::uint32_t>> cycles;  // each starts at its smallest node
    std::vector<bool> attractor;                     // has a predecessor outside the cycle
    std::vector<std::uint32_t> limit_set;            // sorted
    std::vector<std::size_t> cycle_lengths;          // sorted multiset

    std::size_t fixed_point_count() const {
        return static_cast<std::size_t>(
            std::count(cycle_lengths.begin(), cycle_lengths.end(), std::size_t{1}));
    }
};

inline LimitStructure limit_structure(const DynamicsGraph& g) {
    const std::size_t count = g.successors.size();
    std::vector<std::uint32_t> indegree(count, 0);
    for (std::uint32_t succ : g.successors) ++indegree[succ];
    const std::vector<std::uint32_t> original_indegree = indegree;

    // Peel nodes that cannot lie on a cycle.
    std::vector<std::uint32_t> stack;
    for (std::size_t v = 0; v < count; ++v) {
        if (indegree[v] == 0) stack.push_back(static_cast<std::uint32_t>(v));
    }
    std::vector<char> peeled(count, 0);
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        peeled[v] = 1;
        const std::uint32_t w = g.successors[v];
        if (--indegree[w] == 0) stack.push_back(w);
    }

    LimitStructure ls;
    std::vector<char> visited(count, 0);
    for (std::size_t v = 0; v < count; ++v) {
        if (peeled[v] || visited[v]) continue;
        std::vector<std::uint32_t> cycle;
        std::uint32_t cur = static_cast<std::uint32_t>(v);
        bool external_pred = false;
        do {
            visited[cur] = 1;
            cycle.push_back(cur);
            // On a cycle each node has exactly one in-cycle predecessor; any
            // surplus in-degree comes from outside.
            if (original_indegree[cur] > 1) external_pred = true;
            cur = g.successors[cur];
        } while (cur != v);
        ls.cycles.push_back(std::move(cycle));
        ls.attractor.push_back(external_pred);
    }

    // Deterministic presentation: rotate each cycle to start at its smallest
    // node and order cycles by (length, first node).
    for (auto& cycle : ls.cycles) {
        const auto min_it = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), min_it, cycle.end());
    }
    std::vector<std::size_t> order(ls.cycles.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ls.cycles[a].size() != ls.cycles[b].size())
            return ls.cycles[a].size() < ls.cycles[b].size();
        return ls.cycles[a].front() < ls.cycles[b].front();
    });
    LimitStructure sorted;
    for (std::size_t k : order) {
        sorted.cycles.push_back(std::move(ls.cycles[k]));
        sorted.attractor.push_back(ls.attractor[k]);
    }
    for (const auto& cycle : sorted.cycles) {
        sorted.cycle_lengths.push_back(cycle.size());
        sorted.limit_set.insert(sorted.limit_set.end(), cycle.begin(), cycle.end());
    }
    std::sort(sorted.limit_set.begin(), sorted.limit_set.end());
    return sorted;
}

// The restriction of a deterministic dynamics to its limit set is a
// permutation, and permutation digraphs are isomorphic exactly when their
// cycle-type multisets coincide.
inline bool limit_dynamics_isomorphic(const DynamicsGraph& g1, const DynamicsGraph& g2) {
    return limit_structure(g1).cycle_lengths == limit_structure(g2).cycle_lengths;
}

// Explicit bijection between the limit sets, for audit. Empty optional when
// the limit dynamics are not isomorphic.
inline std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> limit_isomorphism(
    const DynamicsGraph& g1, const DynamicsGraph& g2) {
    const LimitStructure a = limit_structure(g1);
    const LimitStructure b = limit_structure(g2);
    if (a.cycle_lengths != b.cycle_lengths) return std::nullopt;
    // Both cycle lists are sorted by length, so same-rank cycles match.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t c = 0; c < a.cycles.size(); ++c) {
        for (std::size_t k = 0; k < a.cycles[c].size(); ++k) {
            out.emplace_back(a.cycles[c][k], b.cycles[c][k]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- witness constructions -------------------------------------------------

// Network plus configuration on which two modes produce different images.
struct DistinguishingWitness {
    AutomataNetwork network;
    std::vector<int> configuration;
    int automaton_i = -1;
    int automaton_j = -1;
};

namespace detail {

inline AutomataNetwork or_copy_network(int n, int i, int j) {
    std::vector<std::function<int(const std::vector<int>&)>> rules;
    for (int a = 0; a < n; ++a) {
        if (a == i) {
            rules.push_back([i, j](const std::vector<int>& x) {
                return (x[static_cast<std::size_t>(i)] == 1 || x[static_cast<std::size_t>(j)] == 1)
                           ? 1
                           : 0;
            });
        } else if (a == j) {
            rules.push_back(
                [i](const std::vector<int>& x) { return x[static_cast<std::size_t>(i)]; });
        } else {
            rules.push_back(
                [a](const std::vector<int>& x) { return x[static_cast<std::size_t>(a)]; });
        }
    }
    return make_network(std::vector<int>(static_cast<std::size_t>(n), 2), rules);
}

inline std::vector<int> per_automaton_update_counts(const BlockSequence& bs) {
    std::vector<int> counts(static_cast<std::size_t>(bs.n), 0);
    for (const auto& block : bs.blocks) {
        for (int i : block) ++counts[static_cast<std::size_t>(i)];
    }
    return counts;
}

inline bool ever_synchronized(const BlockSequence& bs, int i, int j) {
    for (const auto& block : bs.blocks) {
        if (std::binary_search(block.begin(), block.end(), i) &&
            std::binary_search(block.begin(), block.end(), j)) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Witness that two modes with different phi-images induce different one-step
// dynamics. Prefers the Boolean two-automaton probe f_i = x_i OR x_j,
// f_j = x_i, identity elsewhere, probed at x_i=0, x_j=1; pairs whose
// first-update times flip between the modes are tried first, and every
// candidate is verified by direct evaluation. The pair probe cannot see a
// difference that lives only in update multiplicities, so when it finds
// nothing and some automaton is updated a different number of times per step,
// a modular counter on that automaton separates the images at every
// configuration.
inline DistinguishingWitness witness_network_eq0(const PartitionedOrder& mu,
                                                 const PartitionedOrder& mu2) {
    require_same_n(mu, mu2);
    const BlockSequence b1 = phi(mu);
    const BlockSequence b2 = phi(mu2);
    if (b1 == b2) throw std::invalid_argument("modes are equivalent: equal phi-images");
    const int n = mu.n;
    const std::vector<int> t1 = first_update_times(b1);
    const std::vector<int> t2 = first_update_times(b2);

    std::vector<std::pair<int, int>> candidates;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool flipped = (t1[static_cast<std::size_t>(i)] <= t1[static_cast<std::size_t>(j)] &&
                                  t2[static_cast<std::size_t>(i)] > t2[static_cast<std::size_t>(j)]) ||
                                 (t2[static_cast<std::size_t>(i)] <= t2[static_cast<std::size_t>(j)] &&
                                  t1[static_cast<std::size_t>(i)] > t1[static_cast<std::size_t>(j)]);
            if (flipped) candidates.emplace_back(i, j);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) candidates.emplace_back(i, j);
        }
    }

    for (const auto& [i, j] : candidates) {
        AutomataNetwork net = detail::or_copy_network(n, i, j);
        std::vector<int> x(static_cast<std::size_t>(n), 0);
        x[static_cast<std::size_t>(j)] = 1;
        if (apply_mode(net, b1, x) != apply_mode(net, b2, x)) {
            return DistinguishingWitness{std::move(net), std::move(x), i, j};
        }
    }

    const std::vector<int> c1 = detail::per_automaton_update_counts(b1);
    const std::vector<int> c2 = detail::per_automaton_update_counts(b2);
    for (int i = 0; i < n; ++i) {
        if (c1[static_cast<std::size_t>(i)] == c2[static_cast<std::size_t>(i)]) continue;
        const int alpha =
            std::max(c1[static_cast<std::size_t>(i)], c2[static_cast<std::size_t>(i)]);
        std::vector<int> alphabets(static_cast<std::size_t>(n), 1);
        alphabets[static_cast<std::size_t>(i)] = alpha;
        std::vector<std::function<int(const std::vector<int>&)>> rules;
        for (int a = 0; a < n; ++a) {
            if (a == i) {
                rules.push_back([a, alpha](const std::vector<int>& x) {
                    return (x[static_cast<std::size_t>(a)] + 1) % alpha;
                });
            } else {
                rules.push_back(
                    [a](const std::vector<int>& x) { return x[static_cast<std::size_t>(a)]; });
            }
        }
        AutomataNetwork net = make_network(std::move(alphabets), rules);
        std::vector<int> x(static_cast<std::size_t>(n), 0);
        if (apply_mode(net, b1, x) != apply_mode(net, b2, x)) {
            return DistinguishingWitness{std::move(net), std::move(x), i, -1};
        }
    }
    throw std::logic_error("witness_network_eq0: no separating network found");
}

// Network whose limit dynamics are non-isomorphic under two modes that are
// not equivalent up to shift. Follows a case split on how the modes differ:
//   - some automaton updated a different number of times  -> modular counter
//   - a pair synchronized in one mode but never the other -> bit exchange
//     gated by per-automaton counters
//   - otherwise three automata of one matrix cycle in different orders
//     -> three-automaton copy ring
inline AutomataNetwork witness_network_star(const PartitionedOrder& mu,
                                            const PartitionedOrder& mu2) {
    require_same_n(mu, mu2);
    if (equiv_star(mu, mu2)) {
        throw std::invalid_argument("modes are equivalent up to shift");
    }
    const int n = mu.n;
    const BlockSequence b1 = phi(mu);
    const BlockSequence b2 = phi(mu2);
    const std::vector<int> c1 = detail::per_automaton_update_counts(b1);
    const std::vector<int> c2 = detail::per_automaton_update_counts(b2);

    for (int i = 0; i < n; ++i) {
        if (c1[static_cast<std::size_t>(i)] == c2[static_cast<std::size_t>(i)]) continue;
        // Counter over the larger count: a full step is the identity under
        // one mode and a nonzero rotation under the other.
        const int alpha = std::max(c1[static_cast<std::size_t>(i)], c2[static_cast<std::size_t>(i)]);
        std::vector<int> alphabets(static_cast<std::size_t>(n), 1);
        alphabets[static_cast<std::size_t>(i)] = alpha;
        std::vector<std::function<int(const std::vector<int>&)>> rules;
        for (int a = 0; a < n; ++a) {
            if (a == i) {
                rules.push_back([a, alpha](const std::vector<int>& x) {
                    return (x[static_cast<std::size_t>(a)] + 1) % alpha;
                });
            } else {
                rules.push_back(
                    [a](const std::vector<int>& x) { return x[static_cast<std::size_t>(a)]; });
            }
        }
        return make_network(std::move(alphabets), rules);
    }

    // Equal update counts everywhere: both modes come from the same partition
    // and |b1| == |b2|.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (detail::ever_synchronized(b1, i, j) == detail::ever_synchronized(b2, i, j)) {
                continue;
            }
            // (bit, counter) pair on each side; bits swap only when both
            // counters sit at zero, which the synchronizing mode arranges in
            // one block and the other never does.
            const int mod_i = c1[static_cast<std::size_t>(i)];
            const int mod_j = c1[static_cast<std::size_t>(j)];
            std::vector<int> alphabets(static_cast<std::size_t>(n), 1);
            alphabets[static_cast<std::size_t>(i)] = 2 * mod_i;
            alphabets[static_cast<std::size_t>(j)] = 2 * mod_j;
            std::vector<std::function<int(const std::vector<int>&)>> rules;
            for (int a = 0; a < n; ++a) {
                if (a == i) {
                    rules.push_back([i, j, mod_i, mod_j](const std::vector<int>& x) {
                        const int own = x[static_cast<std::size_t>(i)];
                        const int bit = own / mod_i;
                        const int ctr = own % mod_i;
                        const int partner_bit = x[static_cast<std::size_t>(j)] / mod_j;
                        const int new_bit = (ctr == 0) ? partner_bit : bit;
                        return new_bit * mod_i + (ctr + 1) % mod_i;
                    });
                } else if (a == j) {
                    rules.push_back([i, j, mod_i, mod_j](const std::vector<int>& x) {
                        const int own = x[static_cast<std::size_t>(j)];
                        const int bit = own / mod_j;
                        const int ctr = own % mod_j;
                        const int partner_bit = x[static_cast<std::size_t>(i)] / mod_i;
                        const int new_bit = (ctr == 0) ? partner_bit : bit;
                        return new_bit * mod_j + (ctr + 1) % mod_j;
                    });
                } else {
                    rules.push_back(
                        [a](const std::vector<int>& x) { return x[static_cast<std::size_t>(a)]; });
                }
            }
            return make_network(std::move(alphabets), rules);
        }
    }

    // Synchronization agrees everywhere, so each matrix of mu2 permutes the
    // columns of mu's matrix; some permutation must fail to be a rotation.
    const MatrixRepresentation r1 = matrix_repr(mu);
    const MatrixRepresentation r2 = matrix_repr(mu2);
    for (const auto& [j, rows1] : r1.by_size) {
        if (j < 3) continue;
        auto it2 = r2.by_size.find(j);
        if (it2 == r2.by_size.end()) {
            throw std::logic_error("witness_network_star: matrix dimensions diverged");
        }
        const auto& rows2 = it2->second;
        auto column_of = [](const std::vector<std::vector<int>>& rows, int c) {
            std::vector<int> col;
            col.reserve(rows.size());
            for (const auto& row : rows) col.push_back(row[static_cast<std::size_t>(c)]);
            std::sort(col.begin(), col.end());
            return col;
        };
        std::vector<std::vector<int>> cols1, cols2;
        for (int c = 0; c < j; ++c) {
            cols1.push_back(column_of(rows1, c));
            cols2.push_back(column_of(rows2, c));
        }
        std::vector<int> perm(static_cast<std::size_t>(j), -1);
        for (int c = 0; c < j; ++c) {
            const auto found = std::find(cols2.begin(), cols2.end(), cols1[static_cast<std::size_t>(c)]);
            if (found == cols2.end()) {
                throw std::logic_error("witness_network_star: column contents diverged");
            }
            perm[static_cast<std::size_t>(c)] = static_cast<int>(found - cols2.begin());
        }
        // Orientation of each column triple must survive a rotation; find one
        // that flips and wire a copy ring through it.
        for (int a = 0; a < j; ++a) {
            for (int b = a + 1; b < j; ++b) {
                for (int c = b + 1; c < j; ++c) {
                    const int pa = perm[static_cast<std::size_t>(a)];
                    const int pb = perm[static_cast<std::size_t>(b)];
                    const int pc = perm[static_cast<std::size_t>(c)];
                    const bool same_orientation =
                        ((pb - pa + j) % j) < ((pc - pa + j) % j);
                    if (same_orientation) continue;
                    const int hat_i = cols1[static_cast<std::size_t>(a)].front();
                    const int hat_j = cols1[static_cast<std::size_t>(b)].front();
                    const int hat_k = cols1[static_cast<std::size_t>(c)].front();
                    std::vector<std::function<int(const std::vector<int>&)>> rules;
                    for (int v = 0; v < n; ++v) {
                        if (v == hat_i) {
                            rules.push_back([hat_k](const std::vector<int>& x) {
                                return x[static_cast<std::size_t>(hat_k)];
                            });
                        } else if (v == hat_j) {
                            rules.push_back([hat_i](const std::vector<int>& x) {
                                return x[static_cast<std::size_t>(hat_i)];
                            });
                        } else if (v == hat_k) {
                            rules.push_back([hat_j](const std::vector<int>& x) {
                                return x[static_cast<std::size_t>(hat_j)];
                            });
                        } else {
                            rules.push_back([v](const std::vector<int>& x) {
                                return x[static_cast<std::size_t>(v)];
                            });
                        }
                    }
                    return make_network(std::vector<int>(static_cast<std::size_t>(n), 2), rules);
                }
            }
        }
    }
    throw std::logic_error("witness_network_star: case analysis found no separating network");
}

}  // namespace blockpar
