#pragma once

// Reference implementations written straight from the definitions. They are
// deliberately slow and share nothing with the library beyond Graph.

#include "arbcolor/derand.hpp"
#include "arbcolor/graph.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using arbcolor::Graph;
using arbcolor::NodeId;

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

/// Layer loop over S with full-graph degrees, one node at a time.
inline std::vector<std::int64_t> s_induced(const Graph& g, const std::vector<NodeId>& s, std::uint32_t beta) {
    const NodeId n = g.num_nodes();
    std::vector<char> in_s(n, 0);
    for (NodeId v : s) {
        in_s[v] = 1;
    }
    std::vector<std::int64_t> layer(n, kInf);
    for (std::int64_t i = 0; i <= static_cast<std::int64_t>(s.size()); ++i) {
        std::vector<NodeId> chosen;
        for (NodeId v = 0; v < n; ++v) {
            if (!in_s[v] || layer[v] != kInf) {
                continue;
            }
            std::uint32_t at_inf = 0;
            for (NodeId u = 0; u < n; ++u) {
                if (g.has_edge(u, v) && layer[u] == kInf) {
                    ++at_inf;
                }
            }
            if (at_inf <= beta) {
                chosen.push_back(v);
            }
        }
        if (chosen.empty()) {
            break;
        }
        for (NodeId v : chosen) {
            layer[v] = i;
        }
    }
    return layer;
}

inline std::vector<std::int64_t> natural(const Graph& g, std::uint32_t beta) {
    std::vector<NodeId> all(g.num_nodes());
    std::iota(all.begin(), all.end(), NodeId{0});
    return s_induced(g, all, beta);
}

inline void dependency_rec(const Graph& g, const std::vector<std::int64_t>& layer, NodeId v, std::set<NodeId>& out) {
    if (layer[v] == kInf || !out.insert(v).second) {
        return;
    }
    for (NodeId u : g.neighbors(v)) {
        if (layer[u] < layer[v]) {
            dependency_rec(g, layer, u, out);
        }
    }
}

/// Recursive dependency set.
inline std::set<NodeId> dependency(const Graph& g, const std::vector<std::int64_t>& layer, NodeId v) {
    std::set<NodeId> out;
    dependency_rec(g, layer, v, out);
    return out;
}

/// max over subsets W, |W| >= 2, of ceil(|E(W)| / (|W|-1)), edges counted from
/// the edge list.
inline std::uint32_t arboricity(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::uint32_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::uint32_t size = 0;
        for (NodeId v = 0; v < n; ++v) {
            size += (mask >> v) & 1;
        }
        if (size < 2) {
            continue;
        }
        std::uint32_t m = 0;
        for (const auto& e : g.edges()) {
            if (((mask >> e.u) & 1) && ((mask >> e.v) & 1)) {
                ++m;
            }
        }
        best = std::max(best, (m + size - 2) / (size - 1));
    }
    return best;
}

inline bool is_forest(NodeId n, const std::vector<arbcolor::Edge>& edges) {
    std::vector<NodeId> parent(n);
    std::iota(parent.begin(), parent.end(), NodeId{0});
    auto find = [&](NodeId v) {
        while (parent[v] != v) {
            v = parent[v] = parent[parent[v]];
        }
        return v;
    };
    for (const auto& e : edges) {
        const NodeId a = find(e.u);
        const NodeId b = find(e.v);
        if (a == b) {
            return false;
        }
        parent[a] = b;
    }
    return true;
}

/// Y under one seed: conflict edges whose endpoints collide.
inline std::uint64_t conflicts_under(const arbcolor::HashFamily& h, const arbcolor::ConflictEdges& e, std::uint64_t a,
                                     std::uint64_t b) {
    std::uint64_t y = 0;
    for (const auto& [u, v] : e.open) {
        y += ((a * u + b) % h.p) % h.K == ((a * v + b) % h.p) % h.K ? 1 : 0;
    }
    for (const auto& [u, c] : e.to_colored) {
        y += ((a * u + b) % h.p) % h.K == c ? 1 : 0;
    }
    return y;
}

/// E[Y | prefix] by enumerating every seed (a, b) in [p]^2 whose bit string
/// (a high, b low, each ceil(log2 p) bits) starts with the prefix.
inline mpq_class expectation_by_enumeration(const arbcolor::HashFamily& h, const arbcolor::ConflictEdges& e,
                                            std::uint64_t prefix, std::uint32_t len) {
    const std::uint32_t total_bits = 2 * h.bits_per_half;
    mpz_class sum = 0;
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < h.p; ++a) {
        for (std::uint64_t b = 0; b < h.p; ++b) {
            const std::uint64_t bits = (a << h.bits_per_half) | b;
            if (len > 0 && (bits >> (total_bits - len)) != prefix) {
                continue;
            }
            sum += static_cast<unsigned long>(conflicts_under(h, e, a, b));
            ++count;
        }
    }
    mpq_class q(sum, static_cast<unsigned long>(count));
    q.canonicalize();
    return q;
}

/// Erdos-Renyi style graph for property tests.
inline Graph random_graph(NodeId n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<arbcolor::Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (coin(rng)) {
                edges.push_back({u, v});
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

} // namespace oracle
