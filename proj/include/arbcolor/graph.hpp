#pragma once

#include "arbcolor/types.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arbcolor {

/// Undirected edge, normalized so that u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on nodes 0..n-1 in CSR form.
///
/// Adjacency lists are sorted ascending, so "the i-th neighbor of v" is well
/// defined and identical across runs. Every algorithm in the library probes the
/// graph only through degree() and neighbor()/neighbors().
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an edge list. Endpoints may come in either order.
    /// Throws std::invalid_argument on self-loops, duplicate edges or
    /// out-of-range endpoints.
    static Graph from_edges(NodeId n, std::vector<Edge> edges) {
        for (auto& e : edges) {
            if (e.u >= n || e.v >= n) {
                throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + " " +
                                            std::to_string(e.v));
            }
            if (e.u == e.v) {
                throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
            }
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
        }
        std::sort(edges.begin(), edges.end());
        if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
            throw std::invalid_argument("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
        }

        Graph g;
        g.n_ = n;
        g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& e : edges) {
            ++g.offsets_[e.u + 1];
            ++g.offsets_[e.v + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            g.offsets_[i + 1] += g.offsets_[i];
        }
        g.targets_.resize(g.offsets_[n]);
        std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        // Edges are sorted by (u, v); writing smaller neighbors before larger
        // ones leaves every list ascending.
        for (const auto& e : edges) {
            g.targets_[fill[e.v]++] = e.u;
        }
        for (const auto& e : edges) {
            g.targets_[fill[e.u]++] = e.v;
        }
        g.edges_ = std::move(edges);
        return g;
    }

    [[nodiscard]] NodeId num_nodes() const { return n_; }
    [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

    [[nodiscard]] std::uint32_t degree(NodeId v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }

    [[nodiscard]] std::span<const NodeId> neighbors(NodeId v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    /// The i-th entry of v's ascending adjacency list.
    [[nodiscard]] NodeId neighbor(NodeId v, std::size_t i) const { return targets_[offsets_[v] + i]; }

    /// Position of u in v's adjacency list, or degree(v) if absent.
    [[nodiscard]] std::size_t neighbor_index(NodeId v, NodeId u) const {
        auto adj = neighbors(v);
        auto it = std::lower_bound(adj.begin(), adj.end(), u);
        if (it == adj.end() || *it != u) {
            return adj.size();
        }
        return static_cast<std::size_t>(it - adj.begin());
    }

    [[nodiscard]] bool has_edge(NodeId u, NodeId v) const { return neighbor_index(u, v) < degree(u); }

    [[nodiscard]] std::uint32_t max_degree() const {
        std::uint32_t best = 0;
        for (NodeId v = 0; v < n_; ++v) {
            best = std::max(best, degree(v));
        }
        return best;
    }

private:
    NodeId n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
};

/// Old <-> new id correspondence produced by induced_subgraph().
struct NodeMapping {
    std::vector<NodeId> new_to_old;
    std::vector<NodeId> old_to_new; ///< kInvalidNode for dropped nodes
};

/// G[keep] with nodes renumbered 0..|keep|-1 in ascending order of their old ids.
/// `keep` may be given in any order; duplicates and out-of-range ids throw.
inline std::pair<Graph, NodeMapping> induced_subgraph(const Graph& g, std::span<const NodeId> keep) {
    NodeMapping map;
    map.old_to_new.assign(g.num_nodes(), kInvalidNode);
    map.new_to_old.assign(keep.begin(), keep.end());
    std::sort(map.new_to_old.begin(), map.new_to_old.end());
    if (std::adjacent_find(map.new_to_old.begin(), map.new_to_old.end()) != map.new_to_old.end()) {
        throw std::invalid_argument("induced_subgraph: duplicate node in keep set");
    }
    for (std::size_t i = 0; i < map.new_to_old.size(); ++i) {
        NodeId old = map.new_to_old[i];
        if (old >= g.num_nodes()) {
            throw std::invalid_argument("induced_subgraph: node out of range");
        }
        map.old_to_new[old] = static_cast<NodeId>(i);
    }

    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        NodeId a = map.old_to_new[e.u];
        NodeId b = map.old_to_new[e.v];
        if (a != kInvalidNode && b != kInvalidNode) {
            edges.push_back({a, b});
        }
    }
    auto sub = Graph::from_edges(static_cast<NodeId>(map.new_to_old.size()), std::move(edges));
    return {std::move(sub), std::move(map)};
}

} // namespace arbcolor
