#pragma once

#include "arbcolor/coloring.hpp"
#include "arbcolor/graph.hpp"
#include "arbcolor/partition.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace arbcolor {

enum class ColorPick { Highest, Smallest };

struct RecolorResult {
    Coloring coloring;                    ///< proper, palette beta + 1
    std::uint32_t max_constraints = 0;    ///< most finalized neighbors seen by a picking node
    std::vector<NodeId> order;            ///< processing order
};

/// Finalizes nodes from the top layer down; inside a layer by decreasing
/// initial color, then decreasing id. Each node takes the highest (or
/// smallest) color in {0..beta} not held by an already-finalized neighbor.
inline RecolorResult recolor_conflicts(const Graph& g, const PartialBetaPartition& p, const Coloring& initial,
                                       ColorPick pick) {
    if (p.num_nodes() != g.num_nodes() || initial.num_nodes() != g.num_nodes()) {
        throw std::invalid_argument("recolor_conflicts: size mismatch");
    }
    if (!p.is_full()) {
        throw std::invalid_argument("recolor_conflicts: partition has infinity entries");
    }
    RecolorResult r;
    r.order.resize(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        r.order[v] = v;
    }
    auto key = [&](NodeId v) { return std::tuple{p.layer[v], initial.color[v], v}; };
    std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) { return key(a) > key(b); });

    const std::uint32_t beta = p.beta;
    r.coloring.color.assign(g.num_nodes(), 0);
    r.coloring.palette = beta + 1;
    std::vector<char> done(g.num_nodes(), 0);
    std::vector<char> blocked(beta + 1);
    for (NodeId v : r.order) {
        std::fill(blocked.begin(), blocked.end(), 0);
        std::uint32_t constraints = 0;
        for (NodeId w : g.neighbors(v)) {
            if (done[w]) {
                ++constraints;
                blocked[r.coloring.color[w]] = 1;
            }
        }
        if (constraints > beta) {
            throw std::invalid_argument("recolor_conflicts: node " + std::to_string(v) + " has " +
                                        std::to_string(constraints) + " same-or-higher-layer neighbors");
        }
        r.max_constraints = std::max(r.max_constraints, constraints);
        std::uint32_t chosen = 0;
        if (pick == ColorPick::Highest) {
            chosen = beta;
            while (blocked[chosen]) {
                --chosen;
            }
        } else {
            while (blocked[chosen]) {
                ++chosen;
            }
        }
        r.coloring.color[v] = chosen;
        done[v] = 1;
    }
    return r;
}

} // namespace arbcolor
