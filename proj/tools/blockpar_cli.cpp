// blockpar: counting, enumeration and dynamics of block-parallel update
// modes of automata networks.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 resource refusal.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "blockpar/counting.hpp"
#include "blockpar/dynamics.hpp"
#include "blockpar/dynamics_io.hpp"
#include "blockpar/enumeration.hpp"
#include "blockpar/modes.hpp"

using namespace blockpar;

namespace {

constexpr std::uint64_t kDefaultLineCap = 10'000'000;

std::uint64_t line_cap() {
    if (const char* env = std::getenv("BLOCKPAR_LINE_CAP")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw std::invalid_argument("BLOCKPAR_LINE_CAP must be an unsigned integer");
        }
    }
    return kDefaultLineCap;
}

ModeClass parse_class(const std::string& name) {
    if (name == "bp") return ModeClass::bp;
    if (name == "bp0") return ModeClass::bp0;
    if (name == "bpstar") return ModeClass::bpstar;
    throw std::invalid_argument("unknown mode class: " + name);
}

std::string render_jsonl(const PartitionedOrder& mu) {
    std::string out = "{\"oblocks\":[";
    for (std::size_t k = 0; k < mu.oblocks.size(); ++k) {
        if (k > 0) out += ',';
        out += '[';
        for (std::size_t l = 0; l < mu.oblocks[k].size(); ++l) {
            if (l > 0) out += ',';
            out += std::to_string(mu.oblocks[k][l]);
        }
        out += ']';
    }
    out += "]}";
    return out;
}

// ---------------------------------------------------------------- count ---

struct CountOptions {
    int n = 1;
    std::string cls = "bp";
    bool table = false;
};

BigCount count_for(const std::string& cls, int n) {
    if (cls == "bs") return count_bs(n);
    if (cls == "bp") return count_bp(n);
    if (cls == "bp0") return count_bp0(n);
    if (cls == "bpstar") return count_bpstar(n);
    if (cls == "intersection") return count_bs_inter_bp(n);
    throw std::invalid_argument("unknown mode class: " + cls);
}

int cmd_count(const CountOptions& opt) {
    if (opt.table) {
        for (int n = 1; n <= opt.n; ++n) {
            std::cout << n << " " << count_for(opt.cls, n) << "\n";
        }
    } else {
        std::cout << count_for(opt.cls, opt.n) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- enum ---

struct EnumOptions {
    int n = 1;
    std::string cls = "bp";
    std::string format = "text";
    std::uint64_t limit = 0;  // 0 = unlimited
    int partition = -1;       // -1 = all partitions
    int jobs = 1;
    bool force = false;
};

std::string render_mode(const PartitionedOrder& mu, const std::string& format) {
    return format == "jsonl" ? render_jsonl(mu) : to_string(mu);
}

int cmd_enum(const EnumOptions& opt) {
    const ModeClass cls = parse_class(opt.cls);
    StreamOptions stream_opt;
    if (opt.partition >= 0) stream_opt.only_partition = opt.partition;
    if (opt.limit > 0) stream_opt.limit = opt.limit;

    // Exact projected volume is cheap: refuse oversized output up front.
    BigCount projected;
    if (opt.partition >= 0) {
        const auto part = partition_at(opt.n, opt.partition);
        if (!part) throw std::invalid_argument("partition index out of range");
        projected = count_class_for_partition(cls, opt.n, *part);
    } else {
        projected = count_for(opt.cls, opt.n);
    }
    if (opt.limit > 0 && projected > BigCount(opt.limit)) projected = BigCount(opt.limit);
    if (!opt.force && projected > BigCount(line_cap())) {
        throw RefusalError("projected output of " + projected.str() +
                           " lines exceeds the cap of " + std::to_string(line_cap()) +
                           " (use --force or raise BLOCKPAR_LINE_CAP)");
    }

    std::ios::sync_with_stdio(false);
    if (opt.jobs <= 1 || opt.partition >= 0 || opt.limit > 0) {
        ModeStream stream(cls, opt.n, stream_opt);
        while (stream.next()) {
            std::cout << render_mode(stream.mode(), opt.format) << "\n";
        }
        std::cout.flush();
        return 0;
    }

    // Shard by partition index; workers render, the main thread flushes the
    // buffers in partition order so output is byte-identical to --jobs 1.
    const int partition_count = static_cast<int>(all_partitions(opt.n).size());
    std::atomic<int> next_shard{0};
    std::map<int, std::string> ready;
    std::mutex mu;
    std::condition_variable cv;
    std::vector<std::thread> workers;
    const int worker_count = std::min(opt.jobs, partition_count);
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&, cls] {
            while (true) {
                const int shard = next_shard.fetch_add(1);
                if (shard >= partition_count) return;
                std::string buffer;
                ModeStream stream(cls, opt.n, StreamOptions{shard, std::nullopt});
                while (stream.next()) {
                    buffer += render_mode(stream.mode(), opt.format);
                    buffer += '\n';
                }
                std::lock_guard<std::mutex> lock(mu);
                ready.emplace(shard, std::move(buffer));
                cv.notify_all();
            }
        });
    }
    for (int shard = 0; shard < partition_count; ++shard) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return ready.count(shard) > 0; });
        std::string buffer = std::move(ready.at(shard));
        ready.erase(shard);
        lock.unlock();
        std::cout << buffer;
    }
    for (auto& t : workers) t.join();
    std::cout.flush();
    return 0;
}

// ------------------------------------------------------------- dynamics ---

struct DynamicsOptions {
    std::string network_path;
    std::string builtin;
    std::string mode;
    std::string format = "text";
    std::string rotation_n = "3";
};

AutomataNetwork builtin_network(const std::string& name) {
    if (name == "demo") return demo_network();
    if (name.rfind("rotation", 0) == 0) {
        const std::string suffix = name.substr(8);
        const int n = suffix.empty() ? 3 : std::stoi(suffix);
        return rotation_network(n);
    }
    if (name.rfind("identity", 0) == 0) {
        const std::string suffix = name.substr(8);
        const int n = suffix.empty() ? 3 : std::stoi(suffix);
        if (n < 1) throw std::invalid_argument("identity network needs n >= 1");
        return identity_network(std::vector<int>(static_cast<std::size_t>(n), 2));
    }
    throw std::invalid_argument("unknown builtin network: " + name +
                                " (expected demo, rotation<N> or identity<N>)");
}

AutomataNetwork load_network(const DynamicsOptions& opt) {
    if (!opt.builtin.empty()) return builtin_network(opt.builtin);
    std::ifstream in(opt.network_path);
    if (!in) throw std::invalid_argument("cannot open network file: " + opt.network_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return network_from_json(buffer.str());
}

int cmd_dynamics(const DynamicsOptions& opt) {
    const AutomataNetwork net = load_network(opt);

    std::string_view mode_text = opt.mode;
    std::size_t first = mode_text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty mode", 0);
    std::optional<PartitionedOrder> as_po;
    BlockSequence bs;
    if (mode_text[first] == '{') {
        as_po = parse_partitioned_order(mode_text);
        if (as_po->n != net.size()) {
            throw std::invalid_argument("mode covers " + std::to_string(as_po->n) +
                                        " automata but the network has " +
                                        std::to_string(net.size()));
        }
        bs = phi(*as_po);
    } else if (mode_text[first] == '(') {
        bs = parse_block_sequence(mode_text);
    } else {
        throw ParseError("mode must start with '{' or '('", first);
    }

    const DynamicsGraph g = transition_graph(net, bs);
    const LimitStructure ls = limit_structure(g);

    if (opt.format == "dot") {
        std::cout << dynamics_to_dot(g);
        return 0;
    }
    if (opt.format == "jsonl") {
        std::cout << dynamics_report_json(g, ls) << "\n";
        return 0;
    }

    std::cout << "network: n=" << net.size() << " alphabets=[";
    for (std::size_t i = 0; i < net.alphabets.size(); ++i) {
        if (i > 0) std::cout << ',';
        std::cout << net.alphabets[i];
    }
    std::cout << "] configurations=" << g.space.count << "\n";
    if (as_po) {
        std::cout << "mode: " << to_string(*as_po) << "\n";
        std::cout << "phi: " << to_string(bs) << "\n";
    } else {
        std::cout << "mode: " << to_string(bs) << "\n";
    }
    std::cout << "substeps per step: " << bs.blocks.size() << "\n";
    std::cout << "fixed points: " << ls.fixed_point_count() << "\n";
    for (std::size_t c = 0; c < ls.cycles.size(); ++c) {
        if (ls.cycles[c].size() != 1) continue;
        std::cout << "  " << config_label(g.space, ls.cycles[c][0])
                  << "  attractor: " << (ls.attractor[c] ? "yes" : "no") << "\n";
    }
    std::cout << "limit cycles (length > 1): "
              << ls.cycles.size() - ls.fixed_point_count() << "\n";
    for (std::size_t c = 0; c < ls.cycles.size(); ++c) {
        if (ls.cycles[c].size() == 1) continue;
        std::cout << "  length " << ls.cycles[c].size()
                  << "  attractor: " << (ls.attractor[c] ? "yes" : "no") << "  ";
        for (std::size_t k = 0; k < ls.cycles[c].size(); ++k) {
            if (k > 0) std::cout << " -> ";
            std::cout << config_label(g.space, ls.cycles[c][k]);
        }
        std::cout << "\n";
    }
    std::cout << "limit set size: " << ls.limit_set.size() << "\n";
    return 0;
}

// --------------------------------------------------------------- verify ---

struct VerifyOptions {
    int n_max = 6;
    std::uint64_t seed = 42;
};

class Verifier {
public:
    void check(const std::string& name, const BigCount& expected, const BigCount& actual) {
        const bool ok = expected == actual;
        std::cout << name << " = " << expected << " (got " << actual << ") "
                  << (ok ? "[ok]" : "[FAIL]") << "\n";
        if (!ok) ++failures_;
    }

    void check(const std::string& name, bool ok) {
        std::cout << name << " " << (ok ? "[ok]" : "[FAIL]") << "\n";
        if (!ok) ++failures_;
    }

    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

int cmd_verify(const VerifyOptions& opt) {
    if (opt.n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
    if (opt.n_max > 9) {
        throw RefusalError("verify is limited to --n-max 9; larger sizes take minutes to hours");
    }
    Verifier v;

    for (int n = 1; n <= opt.n_max; ++n) {
        std::uint64_t c = 0;
        auto s = enum_bp(n);
        while (s.next()) ++c;
        v.check("BP_" + std::to_string(n), count_bp(n), BigCount(c));
    }
    for (int n = 1; n <= opt.n_max; ++n) {
        std::uint64_t c = 0;
        auto s = enum_bp0(n);
        while (s.next()) ++c;
        v.check("BP0_" + std::to_string(n), count_bp0(n), BigCount(c));
    }
    for (int n = 1; n <= opt.n_max; ++n) {
        std::uint64_t c = 0;
        auto s = enum_bpstar(n);
        while (s.next()) ++c;
        v.check("BP*_" + std::to_string(n), count_bpstar(n), BigCount(c));
    }

    const auto egf = egf_bp0_check(opt.n_max);
    for (int n = 1; n <= opt.n_max; ++n) {
        v.check("egf BP0_" + std::to_string(n), count_bp0(n),
                egf[static_cast<std::size_t>(n - 1)]);
    }

    const int oracle_max = std::min(opt.n_max, kOracleMaxAutomata);
    for (int n = 1; n <= oracle_max; ++n) {
        const auto oracle = oracle_enum_bp(n);
        std::set<PartitionedOrder> got;
        auto s = enum_bp(n);
        while (s.next()) got.insert(s.mode());
        v.check("oracle set BP_" + std::to_string(n) + " (" + std::to_string(oracle.size()) +
                    " modes)",
                got == oracle);

        std::set<std::string> keys0;
        auto s0 = enum_bp0(n);
        while (s0.next()) keys0.insert(to_string(canonical_bp0(s0.mode())));
        v.check("oracle classes BP0_" + std::to_string(n), keys0 == oracle_quotient(n, Relation::eq0));

        std::set<std::string> keys_star;
        auto ss = enum_bpstar(n);
        while (ss.next()) keys_star.insert(to_string(canonical_bpstar(ss.mode())));
        v.check("oracle classes BP*_" + std::to_string(n),
                keys_star == oracle_quotient(n, Relation::star));
    }

    for (int n = 1; n <= std::min(opt.n_max, 5); ++n) {
        std::set<BlockSequence> images;
        auto s = enum_bp(n);
        while (s.next()) {
            const auto bs = phi(s.mode());
            if (is_ordered_partition(bs)) images.insert(bs);
        }
        v.check("intersection size n=" + std::to_string(n), count_bs_inter_bp(n),
                BigCount(images.size()));
    }

    // Equivalence-property spot checks on seeded random networks at n = 3.
    {
        std::vector<PartitionedOrder> modes;
        auto s = enum_bp(3);
        while (s.next()) modes.push_back(s.mode());
        bool ok = true;
        std::mt19937_64 gen(opt.seed);
        int witness_checks = 0;
        for (std::size_t a = 0; a < modes.size() && ok; ++a) {
            for (std::size_t b = a + 1; b < modes.size() && ok; ++b) {
                if (equiv0(modes[a], modes[b])) {
                    for (int r = 0; r < 3; ++r) {
                        const auto net = random_network({2, 2, 2}, gen());
                        ok = ok && transition_graph(net, modes[a]).successors ==
                                       transition_graph(net, modes[b]).successors;
                    }
                } else {
                    const auto w = witness_network_eq0(modes[a], modes[b]);
                    ok = ok && transition_graph(w.network, modes[a]).successors !=
                                   transition_graph(w.network, modes[b]).successors;
                    ++witness_checks;
                }
                if (equiv_star(modes[a], modes[b])) {
                    for (int r = 0; r < 3; ++r) {
                        const auto net = random_network({2, 2, 2}, gen());
                        ok = ok && limit_dynamics_isomorphic(transition_graph(net, modes[a]),
                                                             transition_graph(net, modes[b]));
                    }
                } else {
                    const auto net = witness_network_star(modes[a], modes[b]);
                    ok = ok && !limit_dynamics_isomorphic(transition_graph(net, modes[a]),
                                                          transition_graph(net, modes[b]));
                }
            }
        }
        v.check("equivalence properties at n=3 (" + std::to_string(witness_checks) +
                    " separations, seed " + std::to_string(opt.seed) + ")",
                ok);
    }

    if (v.failures() == 0) {
        std::cout << "verify: all checks passed\n";
        return 0;
    }
    std::cout << "verify: " << v.failures() << " check(s) FAILED\n";
    return 1;
}

// ---------------------------------------------------------------- bench ---

struct BenchOptions {
    int n_max = 8;
};

int cmd_bench(const BenchOptions& opt) {
    if (opt.n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
    if (opt.n_max > 12) throw RefusalError("bench is limited to --n-max 12");
    std::printf("%3s | %13s %9s | %13s %9s | %12s %9s\n", "n", "BP_n", "time", "BP0_n", "time",
                "BP*_n", "time");
    for (int n = 1; n <= opt.n_max; ++n) {
        std::printf("%3d |", n);
        for (ModeClass cls : {ModeClass::bp, ModeClass::bp0, ModeClass::bpstar}) {
            const auto start = std::chrono::steady_clock::now();
            std::uint64_t count = 0;
            ModeStream stream(cls, n);
            while (stream.next()) ++count;
            const double secs = std::chrono::duration_cast<std::chrono::duration<double>>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
            std::printf(" %13llu %8.2fs %s", static_cast<unsigned long long>(count), secs,
                        cls == ModeClass::bpstar ? "" : "|");
        }
        std::printf("\n");
        std::fflush(stdout);
    }
    return 0;
}

// -------------------------------------------------------------- network ---

struct NetworkOptions {
    std::string builtin = "demo";
    std::string out;
};

int cmd_network(const NetworkOptions& opt) {
    const AutomataNetwork net = builtin_network(opt.builtin);
    const std::string text = network_to_json(net);
    if (opt.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(opt.out);
        if (!f) throw std::invalid_argument("cannot write " + opt.out);
        f << text << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-parallel update modes: exact counting, streaming enumeration, and "
                 "automata-network dynamics"};
    app.require_subcommand(1);

    CountOptions count_opt;
    auto* count = app.add_subcommand("count", "evaluate the closed counting formulas");
    count->add_option("--n", count_opt.n, "number of automata")->required()->check(CLI::PositiveNumber);
    count->add_option("--class", count_opt.cls, "bs | bp | bp0 | bpstar | intersection")
        ->check(CLI::IsMember({"bs", "bp", "bp0", "bpstar", "intersection"}));
    count->add_flag("--table", count_opt.table, "print the whole table for 1..n");

    EnumOptions enum_opt;
    auto* enumc = app.add_subcommand("enum", "stream one mode per line");
    enumc->add_option("--n", enum_opt.n, "number of automata")->required()->check(CLI::PositiveNumber);
    enumc->add_option("--class", enum_opt.cls, "bp | bp0 | bpstar")
        ->check(CLI::IsMember({"bp", "bp0", "bpstar"}));
    enumc->add_option("--format", enum_opt.format, "text | jsonl")
        ->check(CLI::IsMember({"text", "jsonl"}));
    enumc->add_option("--limit", enum_opt.limit, "stop after this many modes (0 = all)");
    enumc->add_option("--partition", enum_opt.partition,
                      "emit only this 0-based partition shard");
    enumc->add_option("--jobs", enum_opt.jobs, "worker threads, sharded by partition")
        ->check(CLI::PositiveNumber);
    enumc->add_flag("--force", enum_opt.force, "ignore the output line cap");

    DynamicsOptions dyn_opt;
    auto* dyn = app.add_subcommand("dynamics", "analyze a network under one update mode");
    auto* net_opt = dyn->add_option("--network", dyn_opt.network_path, "network JSON file");
    dyn->add_option("--builtin", dyn_opt.builtin,
                    "built-in network: demo | rotation<N> | identity<N>")
        ->excludes(net_opt);
    dyn->add_option("--mode", dyn_opt.mode,
                    "update mode, e.g. \"{(0),(2,1)}\" or \"({1},{0,2})\"")
        ->required();
    dyn->add_option("--format", dyn_opt.format, "text | jsonl | dot")
        ->check(CLI::IsMember({"text", "jsonl", "dot"}));

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "run the self-validation suite");
    verify->add_option("--n-max", verify_opt.n_max, "largest size to validate (<= 9)");
    verify->add_option("--seed", verify_opt.seed, "seed for the random-network checks");

    BenchOptions bench_opt;
    auto* bench = app.add_subcommand("bench", "enumeration size/time table");
    bench->add_option("--n-max", bench_opt.n_max, "largest size to enumerate (<= 12)");

    NetworkOptions network_opt;
    auto* network = app.add_subcommand("network", "print a built-in network as JSON");
    network->add_option("--builtin", network_opt.builtin, "demo | rotation<N> | identity<N>");
    network->add_option("--out", network_opt.out, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (count->parsed()) return cmd_count(count_opt);
        if (enumc->parsed()) return cmd_enum(enum_opt);
        if (dyn->parsed()) {
            if (dyn_opt.network_path.empty() && dyn_opt.builtin.empty()) {
                throw std::invalid_argument("dynamics needs --network or --builtin");
            }
            return cmd_dynamics(dyn_opt);
        }
        if (verify->parsed()) return cmd_verify(verify_opt);
        if (bench->parsed()) return cmd_bench(bench_opt);
        if (network->parsed()) return cmd_network(network_opt);
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
