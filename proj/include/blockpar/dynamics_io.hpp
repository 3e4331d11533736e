#pragma once

#include <string>

#include "json.hpp"

#include "blockpar/dynamics.hpp"
#include "blockpar/errors.hpp"

// Network file format (exact):
//   { "n": int, "alphabets": [int...], "tables": [[int...]...] }
// where tables[i][idx] = f_i(decode(idx)) under the mixed-radix encoding with
// automaton 0 most significant. Dynamics export to DOT and to a structured
// dump { "successors": [...], "cycles": [...], "attractors": [...] }.

namespace blockpar {

inline AutomataNetwork network_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("alphabets") ||
        !doc.contains("tables")) {
        throw std::invalid_argument("network file needs keys n, alphabets, tables");
    }
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
        throw std::invalid_argument("network key n must be a positive integer");
    }
    const auto n = doc["n"].get<std::size_t>();
    AutomataNetwork net;
    if (!doc["alphabets"].is_array() || doc["alphabets"].size() != n) {
        throw std::invalid_argument("alphabets must be an array of n sizes");
    }
    for (const auto& a : doc["alphabets"]) {
        if (!a.is_number_integer() || a.get<long long>() < 1) {
            throw std::invalid_argument("alphabet sizes must be positive integers");
        }
        net.alphabets.push_back(a.get<int>());
    }
    if (!doc["tables"].is_array() || doc["tables"].size() != n) {
        throw std::invalid_argument("tables must be an array of n tables");
    }
    for (const auto& table : doc["tables"]) {
        if (!table.is_array()) throw std::invalid_argument("each table must be an array");
        std::vector<int> entries;
        entries.reserve(table.size());
        for (const auto& v : table) {
            if (!v.is_number_integer()) {
                throw std::invalid_argument("table entries must be integers");
            }
            entries.push_back(v.get<int>());
        }
        net.tables.push_back(std::move(entries));
    }
    validate_network(net);
    return net;
}

inline std::string network_to_json(const AutomataNetwork& net) {
    nlohmann::json doc;
    doc["n"] = net.size();
    doc["alphabets"] = net.alphabets;
    doc["tables"] = net.tables;
    return doc.dump();
}

inline std::string dynamics_to_dot(const DynamicsGraph& g) {
    std::string out = "digraph dynamics {\n";
    for (std::size_t idx = 0; idx < g.successors.size(); ++idx) {
        out += "  \"" + config_label(g.space, idx) + "\" -> \"" +
               config_label(g.space, g.successors[idx]) + "\";\n";
    }
    out += "}\n";
    return out;
}

inline std::string dynamics_report_json(const DynamicsGraph& g, const LimitStructure& ls) {
    nlohmann::json doc;
    doc["successors"] = g.successors;
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& cycle : ls.cycles) {
        nlohmann::json nodes = nlohmann::json::array();
        for (std::uint32_t v : cycle) nodes.push_back(config_label(g.space, v));
        cycles.push_back(nodes);
    }
    doc["cycles"] = cycles;
    doc["attractors"] = ls.attractor;
    return doc.dump();
}

}  // namespace blockpar
