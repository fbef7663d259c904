#pragma once

#include "arbcolor/graph.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace arbcolor {

/// Constructive upper bound on arboricity: edge-disjoint forests covering E.
struct ArboricityCertificate {
    std::vector<std::vector<Edge>> forests;

    [[nodiscard]] std::uint32_t value() const { return static_cast<std::uint32_t>(forests.size()); }
};

namespace detail {

/// Uniform integer in [0, bound) from a 64-bit engine; rejection sampling keeps
/// the result identical across standard library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r = 0;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

/// Decodes a Pruefer sequence over n >= 2 nodes into the n-1 tree edges.
inline std::vector<Edge> pruefer_decode(NodeId n, const std::vector<NodeId>& seq) {
    std::vector<std::uint32_t> degree(n, 1);
    for (NodeId s : seq) {
        ++degree[s];
    }
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> leaves;
    for (NodeId v = 0; v < n; ++v) {
        if (degree[v] == 1) {
            leaves.push(v);
        }
    }
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (NodeId s : seq) {
        NodeId leaf = leaves.top();
        leaves.pop();
        edges.push_back({std::min(leaf, s), std::max(leaf, s)});
        if (--degree[s] == 1) {
            leaves.push(s);
        }
    }
    NodeId a = leaves.top();
    leaves.pop();
    NodeId b = leaves.top();
    edges.push_back({std::min(a, b), std::max(a, b)});
    return edges;
}

} // namespace detail

/// Union of `alpha` uniformly random spanning trees on n nodes. Edges already
/// present are dropped from later trees, so the returned forests are pairwise
/// disjoint and certify arboricity <= alpha. Deterministic in (n, alpha, seed).
inline std::pair<Graph, ArboricityCertificate> generate_forest_union(NodeId n, std::uint32_t alpha,
                                                                     std::uint64_t seed) {
    if (n < 1 || alpha < 1) {
        throw std::invalid_argument("generate_forest_union: need n >= 1 and alpha >= 1");
    }
    std::mt19937_64 rng(seed);
    ArboricityCertificate cert;
    cert.forests.resize(alpha);
    std::set<Edge> seen;
    std::vector<Edge> all;
    for (std::uint32_t f = 0; f < alpha; ++f) {
        if (n < 2) {
            continue;
        }
        std::vector<NodeId> seq(n - 2);
        for (auto& s : seq) {
            s = static_cast<NodeId>(detail::uniform_below(rng, n));
        }
        for (const auto& e : detail::pruefer_decode(n, seq)) {
            if (seen.insert(e).second) {
                cert.forests[f].push_back(e);
                all.push_back(e);
            }
        }
    }
    return {Graph::from_edges(n, std::move(all)), std::move(cert)};
}

} // namespace arbcolor
