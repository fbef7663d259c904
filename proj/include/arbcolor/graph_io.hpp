#pragma once

#include "arbcolor/generators.hpp"
#include "arbcolor/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbcolor {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Edge-list text format: "n m" then m lines "u v" with 0 <= u < v < n.
inline void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.num_nodes() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) {
        os << e.u << ' ' << e.v << '\n';
    }
}

inline Graph read_edge_list(std::istream& is) {
    long long n = -1;
    long long m = -1;
    if (!(is >> n >> m) || n < 0 || m < 0) {
        throw FormatError("edge list: malformed header");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = -1;
        long long v = -1;
        if (!(is >> u >> v)) {
            throw FormatError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        }
        if (u < 0 || v >= n || u >= v) {
            throw FormatError("edge list: line " + std::to_string(i + 2) + " violates 0 <= u < v < n");
        }
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    std::string extra;
    if (is >> extra) {
        throw FormatError("edge list: trailing data after " + std::to_string(m) + " edges");
    }
    try {
        return Graph::from_edges(static_cast<NodeId>(n), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("edge list: ") + e.what());
    }
}

/// Certificate sidecar: first line is the forest count, then per forest a line
/// with its edge count followed by that many "u v" lines.
inline void write_certificate(std::ostream& os, const ArboricityCertificate& cert) {
    os << cert.forests.size() << '\n';
    for (const auto& forest : cert.forests) {
        os << forest.size() << '\n';
        for (const auto& e : forest) {
            os << e.u << ' ' << e.v << '\n';
        }
    }
}

inline ArboricityCertificate read_certificate(std::istream& is) {
    std::size_t count = 0;
    if (!(is >> count)) {
        throw FormatError("certificate: malformed header");
    }
    ArboricityCertificate cert;
    cert.forests.resize(count);
    for (auto& forest : cert.forests) {
        std::size_t m = 0;
        if (!(is >> m)) {
            throw FormatError("certificate: missing forest size");
        }
        forest.resize(m);
        for (auto& e : forest) {
            if (!(is >> e.u >> e.v)) {
                throw FormatError("certificate: truncated forest");
            }
        }
    }
    return cert;
}

} // namespace arbcolor
