#pragma once

#include "arbcolor/ampc.hpp"
#include "arbcolor/graph.hpp"
#include "arbcolor/partition.hpp"

#include <nlohmann/json.hpp>

#include <map>

namespace arbcolor {

/// Pipeline summary with a fixed key order, suitable for diffing.
inline nlohmann::ordered_json pipeline_report(const Graph& g, const PipelineConfig& cfg, const PipelineResult& r) {
    const auto check = validate_partition(g, r.partition);
    std::map<std::uint32_t, std::uint32_t> histogram;
    for (Layer l : r.partition.layer) {
        if (l.is_finite()) {
            ++histogram[l.value()];
        }
    }
    nlohmann::ordered_json layers = nlohmann::ordered_json::object();
    for (const auto& [layer, count] : histogram) {
        layers[std::to_string(layer)] = count;
    }
    nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
    for (const auto& round : r.ledger.per_round) {
        rounds.push_back({{"nodes_remaining", round.nodes_remaining},
                          {"max_machine_reads", round.max_machine_reads},
                          {"max_machine_writes", round.max_machine_writes},
                          {"max_explored_edges", round.max_explored_edges},
                          {"kind", round.peel ? "peel" : "lca"}});
    }
    nlohmann::ordered_json j;
    j["n"] = g.num_nodes();
    j["m"] = g.num_edges();
    j["beta"] = r.partition.beta;
    j["x"] = r.x;
    j["delta"] = cfg.delta;
    j["c"] = cfg.c;
    j["mode"] = to_string(r.mode);
    j["status"] = to_string(r.status);
    j["rounds"] = r.ledger.rounds;
    j["size"] = check.size;
    j["infinity_count"] = check.infinity_count;
    j["layers_histogram"] = layers;
    j["max_machine_reads"] = r.ledger.max_machine_reads();
    j["space_budget"] = r.ledger.space_budget;
    j["valid"] = check.valid() && check.infinity_count == 0;
    j["per_round"] = rounds;
    if (!r.diagnostics.empty()) {
        j["diagnostics"] = r.diagnostics;
    }
    return j;
}

} // namespace arbcolor
