#pragma once

#include "arbcolor/graph.hpp"
#include "arbcolor/graph_io.hpp"
#include "arbcolor/types.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace arbcolor {

/// Layer assignment V -> N u {inf} together with its out-degree parameter beta.
/// Valid when every finite-layer node has at most beta neighbors in the same
/// or a higher layer (inf counts as higher). With no inf entries it is a full
/// beta-partition.
struct PartialBetaPartition {
    std::uint32_t beta = 1;
    std::vector<Layer> layer;

    PartialBetaPartition() = default;
    PartialBetaPartition(std::uint32_t beta_, NodeId n) : beta(beta_), layer(n, kInfinity) {}

    [[nodiscard]] NodeId num_nodes() const { return static_cast<NodeId>(layer.size()); }

    [[nodiscard]] std::uint32_t infinity_count() const {
        return static_cast<std::uint32_t>(std::count(layer.begin(), layer.end(), kInfinity));
    }

    [[nodiscard]] bool is_full() const { return infinity_count() == 0; }

    /// Number of distinct finite layers.
    [[nodiscard]] std::uint32_t size() const {
        std::set<Layer> distinct;
        for (Layer l : layer) {
            if (l.is_finite()) {
                distinct.insert(l);
            }
        }
        return static_cast<std::uint32_t>(distinct.size());
    }

    /// Largest finite layer, or kInfinity when every node is at infinity.
    [[nodiscard]] Layer max_finite_layer() const {
        Layer best = kInfinity;
        for (Layer l : layer) {
            if (l.is_finite() && (best.is_infinite() || l > best)) {
                best = l;
            }
        }
        return best;
    }

    friend bool operator==(const PartialBetaPartition&, const PartialBetaPartition&) = default;
};

namespace detail {

/// Iterated peeling over `count` local nodes. Round i gives layer i to every
/// still-unassigned node with at most beta neighbors at infinity, where
/// `degree_of(i)` is the node's degree in the full graph (neighbors outside the
/// member set stay at infinity forever) and `local_neighbors(i)` yields the
/// local indices of member neighbors. Stops at the first round that assigns
/// nothing.
template <typename DegreeOf, typename LocalNeighbors>
std::vector<Layer> peel_layers(std::size_t count, DegreeOf&& degree_of, LocalNeighbors&& local_neighbors,
                               std::uint32_t beta) {
    std::vector<Layer> layers(count, kInfinity);
    std::vector<std::uint32_t> inf_neighbors(count);
    std::vector<std::uint32_t> frontier;
    for (std::size_t i = 0; i < count; ++i) {
        inf_neighbors[i] = degree_of(i);
        if (inf_neighbors[i] <= beta) {
            frontier.push_back(static_cast<std::uint32_t>(i));
        }
    }
    std::vector<char> queued(count, 0);
    for (auto i : frontier) {
        queued[i] = 1;
    }
    std::uint32_t round = 0;
    std::vector<std::uint32_t> next;
    while (!frontier.empty() && round <= count) {
        for (auto i : frontier) {
            layers[i] = Layer{round};
        }
        next.clear();
        for (auto i : frontier) {
            for (auto j : local_neighbors(i)) {
                if (layers[j].is_finite()) {
                    continue;
                }
                if (--inf_neighbors[j] <= beta && !queued[j]) {
                    queued[j] = 1;
                    next.push_back(j);
                }
            }
        }
        std::swap(frontier, next);
        ++round;
    }
    return layers;
}

inline std::vector<NodeId> checked_node_set(const Graph& g, std::span<const NodeId> s) {
    std::vector<NodeId> members(s.begin(), s.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && members.back() >= g.num_nodes()) {
        throw std::invalid_argument("node set contains an out-of-range id");
    }
    return members;
}

} // namespace detail

/// S-induced beta-partition: peeling restricted to S with degrees taken in the
/// full graph. Nodes outside S stay at infinity.
inline PartialBetaPartition induced_partition(const Graph& g, std::span<const NodeId> s, std::uint32_t beta) {
    if (beta < 1) {
        throw std::invalid_argument("induced_partition: beta must be >= 1");
    }
    const auto members = detail::checked_node_set(g, s);
    std::vector<NodeId> local(g.num_nodes(), kInvalidNode);
    for (std::size_t i = 0; i < members.size(); ++i) {
        local[members[i]] = static_cast<NodeId>(i);
    }
    std::vector<std::vector<std::uint32_t>> adj(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (NodeId w : g.neighbors(members[i])) {
            if (local[w] != kInvalidNode) {
                adj[i].push_back(local[w]);
            }
        }
    }
    auto layers = detail::peel_layers(
        members.size(), [&](std::size_t i) { return g.degree(members[i]); },
        [&](std::uint32_t i) -> const std::vector<std::uint32_t>& { return adj[i]; }, beta);

    PartialBetaPartition p(beta, g.num_nodes());
    for (std::size_t i = 0; i < members.size(); ++i) {
        p.layer[members[i]] = layers[i];
    }
    return p;
}

/// The natural beta-partition: the V-induced one.
inline PartialBetaPartition natural_partition(const Graph& g, std::uint32_t beta) {
    if (beta < 1) {
        throw std::invalid_argument("natural_partition: beta must be >= 1");
    }
    PartialBetaPartition p(beta, g.num_nodes());
    p.layer = detail::peel_layers(
        g.num_nodes(), [&](std::size_t v) { return g.degree(static_cast<NodeId>(v)); },
        [&](std::uint32_t v) { return g.neighbors(v); }, beta);
    return p;
}

struct DependencySet {
    NodeId root = kInvalidNode;
    std::vector<NodeId> members; ///< ascending

    [[nodiscard]] bool contains(NodeId v) const { return std::binary_search(members.begin(), members.end(), v); }
};

/// Nodes reachable from v along strictly layer-decreasing paths (v included);
/// empty when v is at infinity.
inline DependencySet dependency_set(const Graph& g, const PartialBetaPartition& p, NodeId v) {
    if (p.num_nodes() != g.num_nodes()) {
        throw std::invalid_argument("dependency_set: partition does not cover the graph");
    }
    DependencySet d{v, {}};
    if (p.layer[v].is_infinite()) {
        return d;
    }
    std::vector<char> seen(g.num_nodes(), 0);
    std::vector<NodeId> work{v};
    seen[v] = 1;
    for (std::size_t head = 0; head < work.size(); ++head) {
        const NodeId w = work[head];
        for (NodeId u : g.neighbors(w)) {
            if (!seen[u] && p.layer[u] < p.layer[w]) {
                seen[u] = 1;
                work.push_back(u);
            }
        }
    }
    std::sort(work.begin(), work.end());
    d.members = std::move(work);
    return d;
}

namespace detail {

/// Preference key for forwarding targets: infinity outside S, then infinity
/// inside S, then finite layers from highest to lowest; lower id breaks ties.
inline std::tuple<int, std::int64_t, NodeId> forwarding_rank(Layer sigma, bool in_s, NodeId id) {
    if (sigma.is_infinite()) {
        return {in_s ? 1 : 0, 0, id};
    }
    return {2, -static_cast<std::int64_t>(sigma.value()), id};
}

} // namespace detail

/// The min{deg(u), beta+1} neighbors of u with the highest sigma values, in
/// preference order (see detail::forwarding_rank).
inline std::vector<NodeId> forwarding_set(const Graph& g, std::span<const NodeId> s, const PartialBetaPartition& sigma,
                                          NodeId u) {
    const auto members = detail::checked_node_set(g, s);
    if (!std::binary_search(members.begin(), members.end(), u)) {
        throw std::invalid_argument("forwarding_set: u is not in S");
    }
    std::vector<NodeId> candidates(g.neighbors(u).begin(), g.neighbors(u).end());
    auto key = [&](NodeId w) {
        return detail::forwarding_rank(sigma.layer[w], std::binary_search(members.begin(), members.end(), w), w);
    };
    std::sort(candidates.begin(), candidates.end(), [&](NodeId a, NodeId b) { return key(a) < key(b); });
    candidates.resize(std::min<std::size_t>(candidates.size(), sigma.beta + 1));
    return candidates;
}

struct ValidationReport {
    std::vector<NodeId> violations; ///< finite-layer nodes with > beta same-or-higher neighbors
    std::uint32_t infinity_count = 0;
    std::uint32_t size = 0;

    [[nodiscard]] bool valid() const { return violations.empty(); }
};

inline ValidationReport validate_partition(const Graph& g, const PartialBetaPartition& p) {
    if (p.num_nodes() != g.num_nodes()) {
        throw std::invalid_argument("validate_partition: partition does not cover the graph");
    }
    ValidationReport report;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (p.layer[v].is_infinite()) {
            continue;
        }
        std::uint32_t up = 0;
        for (NodeId w : g.neighbors(v)) {
            up += p.layer[w] >= p.layer[v] ? 1 : 0;
        }
        if (up > p.beta) {
            report.violations.push_back(v);
        }
    }
    report.infinity_count = p.infinity_count();
    report.size = p.size();
    return report;
}

/// Pointwise minimum of partial beta-partitions over the same node universe.
inline PartialBetaPartition min_merge(std::span<const PartialBetaPartition> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("min_merge: no partitions given");
    }
    PartialBetaPartition merged = parts.front();
    for (const auto& part : parts.subspan(1)) {
        if (part.beta != merged.beta) {
            throw std::invalid_argument("min_merge: mismatched beta");
        }
        if (part.num_nodes() != merged.num_nodes()) {
            throw std::invalid_argument("min_merge: mismatched node universe");
        }
        for (NodeId v = 0; v < merged.num_nodes(); ++v) {
            merged.layer[v] = std::min(merged.layer[v], part.layer[v]);
        }
    }
    return merged;
}

/// One "v layer" line per node, "inf" for the infinity layer.
inline void write_partition(std::ostream& os, const PartialBetaPartition& p) {
    for (NodeId v = 0; v < p.num_nodes(); ++v) {
        os << v << ' ' << p.layer[v] << '\n';
    }
}

/// Reads the format written by write_partition(). Every node 0..n-1 must
/// appear exactly once.
inline PartialBetaPartition read_partition(std::istream& is, NodeId n, std::uint32_t beta) {
    PartialBetaPartition p(beta, n);
    std::vector<char> seen(n, 0);
    long long v = -1;
    std::string token;
    while (is >> v >> token) {
        if (v < 0 || v >= n || seen[v]) {
            throw FormatError("partition: bad or repeated node id " + std::to_string(v));
        }
        seen[v] = 1;
        if (token == "inf") {
            continue;
        }
        try {
            std::size_t used = 0;
            const unsigned long value = std::stoul(token, &used);
            if (used != token.size() || value >= 0xFFFFFFFFul) {
                throw FormatError("partition: bad layer '" + token + "'");
            }
            p.layer[v] = Layer{static_cast<std::uint32_t>(value)};
        } catch (const std::logic_error&) {
            throw FormatError("partition: bad layer '" + token + "'");
        }
    }
    if (!is.eof()) {
        throw FormatError("partition: malformed line");
    }
    if (std::count(seen.begin(), seen.end(), 0) != 0) {
        throw FormatError("partition: missing nodes");
    }
    return p;
}

} // namespace arbcolor
