#pragma once

#include "arbcolor/coloring.hpp"
#include "arbcolor/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbcolor {

struct KwResult {
    Coloring coloring;
    std::uint32_t sub_rounds = 0;
    std::uint32_t phases = 0;
    std::vector<std::uint32_t> palette_trace; ///< palette at the start of each phase and at the end
};

/// Block-halving color reduction to target_beta + 1 colors. Each phase splits
/// the palette into blocks of 2(target_beta + 1) consecutive colors; inside a
/// block the holders of the current top color move, all at once, to the
/// smallest of the block's lowest target_beta + 1 colors that no neighbor
/// uses. Blocks are then relabeled contiguously.
///
/// Every node may have at most target_beta neighbors in g_scope.
inline KwResult kw_reduce(const Graph& g_scope, const Coloring& cur, std::uint32_t target_beta) {
    if (cur.num_nodes() != g_scope.num_nodes()) {
        throw std::invalid_argument("kw_reduce: coloring does not match graph");
    }
    if (g_scope.max_degree() > target_beta) {
        throw std::invalid_argument("kw_reduce: degree " + std::to_string(g_scope.max_degree()) +
                                    " exceeds target_beta " + std::to_string(target_beta));
    }
    if (!monochromatic_edges(g_scope, cur).empty()) {
        throw std::invalid_argument("kw_reduce: input coloring is not proper");
    }
    const std::uint32_t keep = target_beta + 1;
    const std::uint32_t block = 2 * keep;
    KwResult r;
    r.coloring = cur;
    std::uint32_t k = cur.palette;
    std::vector<char> used(keep);
    while (k > keep) {
        r.palette_trace.push_back(k);
        const std::uint32_t blocks = (k + block - 1) / block;
        // Nodes grouped by current color, so each sub-round touches only movers.
        std::vector<std::vector<NodeId>> holders(k);
        for (NodeId v = 0; v < g_scope.num_nodes(); ++v) {
            holders[r.coloring.color[v]].push_back(v);
        }
        std::uint32_t phase_rounds = 0;
        for (std::uint32_t b = 0; b < blocks; ++b) {
            const std::uint32_t lo = b * block;
            const std::uint32_t size = std::min(block, k - lo);
            if (size <= keep) {
                continue;
            }
            phase_rounds = std::max(phase_rounds, size - keep);
            for (std::uint32_t top = lo + size - 1; top >= lo + keep; --top) {
                for (NodeId v : holders[top]) {
                    std::fill(used.begin(), used.end(), 0);
                    for (NodeId w : g_scope.neighbors(v)) {
                        const std::uint32_t c = r.coloring.color[w];
                        if (c >= lo && c < lo + keep) {
                            used[c - lo] = 1;
                        }
                    }
                    const auto free = static_cast<std::uint32_t>(std::find(used.begin(), used.end(), 0) - used.begin());
                    r.coloring.color[v] = lo + free;
                }
            }
        }
        for (auto& c : r.coloring.color) {
            c = (c / block) * keep + (c % block);
        }
        const std::uint32_t last = k - (blocks - 1) * block;
        k = (blocks - 1) * keep + std::min(last, keep);
        r.sub_rounds += phase_rounds;
        ++r.phases;
    }
    r.coloring.palette = std::max<std::uint32_t>(k, 1);
    r.palette_trace.push_back(r.coloring.palette);
    return r;
}

} // namespace arbcolor
