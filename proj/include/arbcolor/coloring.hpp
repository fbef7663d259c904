#pragma once

#include "arbcolor/graph.hpp"
#include "arbcolor/graph_io.hpp"
#include "arbcolor/partition.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbcolor {

enum class ColoringScope { WholeGraph, PerLayer };

/// Colors are 0-based and below `palette`. With PerLayer scope only edges
/// whose endpoints share a layer are required to be bichromatic.
struct Coloring {
    std::vector<std::uint32_t> color;
    std::uint32_t palette = 1;
    ColoringScope scope = ColoringScope::WholeGraph;

    [[nodiscard]] NodeId num_nodes() const { return static_cast<NodeId>(color.size()); }

    /// Every node colored with its own id.
    static Coloring from_ids(NodeId n) {
        Coloring c;
        c.color.resize(n);
        for (NodeId v = 0; v < n; ++v) {
            c.color[v] = v;
        }
        c.palette = std::max<std::uint32_t>(1, n);
        return c;
    }

    /// Shrinks the palette to (largest used color + 1).
    void trim_palette() {
        std::uint32_t top = 0;
        for (auto c : color) {
            top = std::max(top, c);
        }
        palette = top + 1;
    }
};

/// Monochromatic edges of g under c. Passing `layers` restricts the scan to
/// edges inside a single layer.
inline std::vector<Edge> monochromatic_edges(const Graph& g, const Coloring& c,
                                             const PartialBetaPartition* layers = nullptr) {
    if (c.num_nodes() != g.num_nodes()) {
        throw std::invalid_argument("coloring does not cover the graph");
    }
    std::vector<Edge> bad;
    for (const auto& e : g.edges()) {
        if (layers != nullptr && layers->layer[e.u] != layers->layer[e.v]) {
            continue;
        }
        if (c.color[e.u] == c.color[e.v]) {
            bad.push_back(e);
        }
    }
    return bad;
}

inline bool is_proper(const Graph& g, const Coloring& c) {
    if (c.num_nodes() != g.num_nodes()) {
        return false;
    }
    for (auto col : c.color) {
        if (col >= c.palette) {
            return false;
        }
    }
    return monochromatic_edges(g, c).empty();
}

enum class IntraRule { LayerThenId, LayerThenInitialColor };

/// Acyclic orientation induced by a full beta-partition. out[v] lists the
/// heads of v's outgoing edges in ascending id order.
struct Orientation {
    std::vector<std::vector<NodeId>> out;
    PartialBetaPartition source_partition;
    IntraRule rule = IntraRule::LayerThenId;

    [[nodiscard]] NodeId num_nodes() const { return static_cast<NodeId>(out.size()); }

    [[nodiscard]] std::uint32_t max_out_degree() const {
        std::size_t best = 0;
        for (const auto& o : out) {
            best = std::max(best, o.size());
        }
        return static_cast<std::uint32_t>(best);
    }

    [[nodiscard]] std::size_t num_edges() const {
        std::size_t m = 0;
        for (const auto& o : out) {
            m += o.size();
        }
        return m;
    }

    /// Kahn's algorithm over the oriented edges.
    [[nodiscard]] bool is_acyclic() const {
        std::vector<std::uint32_t> indeg(out.size(), 0);
        for (const auto& o : out) {
            for (NodeId w : o) {
                ++indeg[w];
            }
        }
        std::vector<NodeId> ready;
        for (NodeId v = 0; v < out.size(); ++v) {
            if (indeg[v] == 0) {
                ready.push_back(v);
            }
        }
        std::size_t seen = 0;
        while (!ready.empty()) {
            const NodeId v = ready.back();
            ready.pop_back();
            ++seen;
            for (NodeId w : out[v]) {
                if (--indeg[w] == 0) {
                    ready.push_back(w);
                }
            }
        }
        return seen == out.size();
    }
};

/// Orients every edge from the lower layer to the higher one. Same-layer edges
/// go from lower to higher id, or from lower to higher initial color (then id).
inline Orientation orient_by_partition(const Graph& g, const PartialBetaPartition& p, IntraRule rule,
                                       const Coloring* initial = nullptr) {
    if (p.num_nodes() != g.num_nodes()) {
        throw std::invalid_argument("orient_by_partition: partition does not cover the graph");
    }
    if (!p.is_full()) {
        throw std::invalid_argument("orient_by_partition: partition has infinity entries");
    }
    if (rule == IntraRule::LayerThenInitialColor) {
        if (initial == nullptr || initial->num_nodes() != g.num_nodes()) {
            throw std::invalid_argument("orient_by_partition: initial coloring required");
        }
    }
    Orientation o;
    o.out.resize(g.num_nodes());
    o.source_partition = p;
    o.rule = rule;
    for (const auto& e : g.edges()) {
        NodeId from = e.u;
        NodeId to = e.v;
        if (p.layer[e.u] != p.layer[e.v]) {
            if (p.layer[e.u] > p.layer[e.v]) {
                std::swap(from, to);
            }
        } else if (rule == IntraRule::LayerThenInitialColor) {
            const auto cu = initial->color[e.u];
            const auto cv = initial->color[e.v];
            if (cu == cv) {
                throw std::invalid_argument("orient_by_partition: initial coloring not proper within layer " +
                                            p.layer[e.u].to_string());
            }
            if (cu > cv) {
                std::swap(from, to);
            }
        }
        o.out[from].push_back(to);
    }
    for (auto& list : o.out) {
        std::sort(list.begin(), list.end());
    }
    return o;
}

/// One "v color" line per node.
inline void write_coloring(std::ostream& os, const Coloring& c) {
    for (NodeId v = 0; v < c.num_nodes(); ++v) {
        os << v << ' ' << c.color[v] << '\n';
    }
}

/// Reads the format written by write_coloring(); the palette becomes the
/// largest color plus one.
inline Coloring read_coloring(std::istream& is, NodeId n) {
    Coloring c;
    c.color.assign(n, 0);
    std::vector<char> seen(n, 0);
    long long v = -1;
    long long col = -1;
    while (is >> v >> col) {
        if (v < 0 || v >= n || seen[v]) {
            throw FormatError("coloring: bad or repeated node id " + std::to_string(v));
        }
        if (col < 0 || col > 0xFFFFFFFELL) {
            throw FormatError("coloring: bad color for node " + std::to_string(v));
        }
        seen[v] = 1;
        c.color[v] = static_cast<std::uint32_t>(col);
    }
    if (!is.eof()) {
        throw FormatError("coloring: malformed line");
    }
    if (std::count(seen.begin(), seen.end(), 0) != 0) {
        throw FormatError("coloring: missing nodes");
    }
    c.trim_palette();
    return c;
}

} // namespace arbcolor
