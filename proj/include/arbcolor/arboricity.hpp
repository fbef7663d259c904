#pragma once

#include "arbcolor/graph.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace arbcolor {

inline constexpr NodeId kMaxOracleNodes = 16;

/// Exact arboricity by exhaustive subset enumeration:
///   max over W with |W| >= 2 of ceil(|E(G[W])| / (|W| - 1)).
/// Oracle scale only (n <= 16). Returns std::nullopt for edgeless graphs, whose
/// arboricity is 0 by convention.
inline std::optional<std::uint32_t> arboricity_exact_small(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (n > kMaxOracleNodes) {
        throw std::invalid_argument("arboricity_exact_small: n > 16");
    }
    if (g.num_edges() == 0) {
        return std::nullopt;
    }
    std::vector<std::uint32_t> adj_mask(n, 0);
    for (const auto& e : g.edges()) {
        adj_mask[e.u] |= 1u << e.v;
        adj_mask[e.v] |= 1u << e.u;
    }
    std::uint32_t best = 0;
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t w = 1; w <= full; ++w) {
        const auto size = static_cast<std::uint32_t>(std::popcount(w));
        if (size < 2) {
            continue;
        }
        std::uint32_t twice_edges = 0;
        for (std::uint32_t rest = w; rest != 0; rest &= rest - 1) {
            twice_edges += static_cast<std::uint32_t>(std::popcount(adj_mask[std::countr_zero(rest)] & w));
        }
        const std::uint32_t edges = twice_edges / 2;
        best = std::max(best, (edges + size - 2) / (size - 1));
    }
    return best;
}

/// Number of nodes whose degree exceeds beta.
inline std::uint32_t degree_tail_count(const Graph& g, std::uint32_t beta) {
    std::uint32_t count = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        count += g.degree(v) > beta ? 1 : 0;
    }
    return count;
}

} // namespace arbcolor
