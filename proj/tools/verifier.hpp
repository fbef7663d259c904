#pragma once

// Stand-alone checks for partition and coloring files. Only the graph types
// are shared with the producers; the file parsing and every check live here.

#include "arbcolor/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbcolor::verify {

inline constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

struct ParseResult {
    std::vector<std::uint64_t> values; ///< kInf for "inf"
    std::string error;                 ///< empty on success
};

/// Parses "v value" lines covering every node 0..n-1 exactly once.
inline ParseResult parse_node_values(std::istream& is, NodeId n, bool allow_inf) {
    ParseResult r;
    r.values.assign(n, 0);
    std::vector<char> seen(n, 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string node_tok;
        std::string value_tok;
        std::string extra;
        if (!(ls >> node_tok)) {
            continue;
        }
        if (!(ls >> value_tok) || (ls >> extra)) {
            r.error = "line " + std::to_string(line_no) + ": expected two fields";
            return r;
        }
        std::uint64_t v = 0;
        std::uint64_t value = 0;
        try {
            std::size_t used = 0;
            v = std::stoull(node_tok, &used);
            if (used != node_tok.size()) {
                throw std::invalid_argument(node_tok);
            }
            if (allow_inf && value_tok == "inf") {
                value = kInf;
            } else {
                value = std::stoull(value_tok, &used);
                if (used != value_tok.size()) {
                    throw std::invalid_argument(value_tok);
                }
            }
        } catch (const std::exception&) {
            r.error = "line " + std::to_string(line_no) + ": not a number";
            return r;
        }
        if (v >= n || seen[v]) {
            r.error = "line " + std::to_string(line_no) + ": bad or repeated node " + node_tok;
            return r;
        }
        seen[v] = 1;
        r.values[v] = value;
    }
    for (NodeId v = 0; v < n; ++v) {
        if (!seen[v]) {
            r.error = "node " + std::to_string(v) + " missing";
            return r;
        }
    }
    return r;
}

struct PartitionCheck {
    bool valid = false;
    std::uint64_t infinity_count = 0;
    std::uint64_t size = 0; ///< distinct finite layers
    std::vector<NodeId> violations;
};

/// Full partition check: no inf layers, and each node has at most beta
/// neighbors whose layer is at least its own.
inline PartitionCheck check_partition(const Graph& g, const std::vector<std::uint64_t>& layer, std::uint64_t beta) {
    PartitionCheck c;
    std::vector<std::uint64_t> finite;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (layer[v] == kInf) {
            ++c.infinity_count;
            continue;
        }
        finite.push_back(layer[v]);
        std::uint64_t up = 0;
        for (NodeId w : g.neighbors(v)) {
            if (layer[w] >= layer[v]) {
                ++up;
            }
        }
        if (up > beta) {
            c.violations.push_back(v);
        }
    }
    std::sort(finite.begin(), finite.end());
    c.size = static_cast<std::uint64_t>(std::unique(finite.begin(), finite.end()) - finite.begin());
    c.valid = c.violations.empty() && c.infinity_count == 0;
    return c;
}

struct ColoringCheck {
    bool proper = false;
    std::uint64_t palette = 0; ///< largest color + 1
    bool within_bound = true;
    std::vector<std::pair<NodeId, NodeId>> conflicts;
};

inline ColoringCheck check_coloring(const Graph& g, const std::vector<std::uint64_t>& color,
                                    std::optional<std::uint64_t> palette_bound) {
    ColoringCheck c;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        c.palette = std::max(c.palette, color[v] + 1);
        for (NodeId w : g.neighbors(v)) {
            if (v < w && color[v] == color[w]) {
                c.conflicts.emplace_back(v, w);
            }
        }
    }
    c.proper = c.conflicts.empty();
    if (palette_bound) {
        c.within_bound = c.palette <= *palette_bound;
    }
    return c;
}

} // namespace arbcolor::verify
