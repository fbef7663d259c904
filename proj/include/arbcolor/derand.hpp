#pragma once

#include "arbcolor/coloring.hpp"
#include "arbcolor/detail/math.hpp"
#include "arbcolor/graph.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbcolor {

class DerandFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hash family h_{a,b}(v) = ((a v + b) mod p) mod K over seeds (a, b) in [p]^2.
struct HashFamily {
    std::uint64_t p = 2;
    std::uint64_t K = 1;
    std::uint32_t bits_per_half = 1; ///< ceil(log2 p); a occupies the high half of the seed string

    [[nodiscard]] std::uint64_t operator()(std::uint64_t a, std::uint64_t b, std::uint64_t v) const {
        return ((a * v + b) % p) % K;
    }

    [[nodiscard]] std::uint32_t seed_bits() const { return 2 * bits_per_half; }
};

/// K = 2 x Delta (at least 1) and p = the smallest prime above max(n, K^2).
inline HashFamily make_hash_family(NodeId n, std::uint64_t x, std::uint32_t max_degree) {
    HashFamily h;
    h.K = std::max<std::uint64_t>(1, 2 * x * max_degree);
    h.p = detail::next_prime_above(std::max<std::uint64_t>(n, h.K * h.K));
    h.bits_per_half = detail::ceil_log2(h.p);
    return h;
}

/// Conflict edges of the current iteration: both endpoints uncolored, or one
/// uncolored endpoint `u` next to a colored node holding `fixed_color`.
struct ConflictEdges {
    std::vector<std::pair<NodeId, NodeId>> open;              ///< (u, v), both uncolored
    std::vector<std::pair<NodeId, std::uint64_t>> to_colored; ///< (u, fixed_color)

    [[nodiscard]] bool empty() const { return open.empty() && to_colored.empty(); }
};

namespace detail {

/// Integers r in the cyclic interval {start, start+1, ..., start+len-1} mod p
/// split into at most two linear ranges [lo, hi).
struct CyclicRanges {
    std::uint64_t lo[2];
    std::uint64_t hi[2];
    int count;
};

inline CyclicRanges cyclic_ranges(std::uint64_t start, std::uint64_t len, std::uint64_t p) {
    if (start + len <= p) {
        return {{start, 0}, {start + len, 0}, 1};
    }
    return {{start, 0}, {p, start + len - p}, 2};
}

inline std::uint64_t count_below(const CyclicRanges& r, std::uint64_t t) {
    std::uint64_t total = 0;
    for (int i = 0; i < r.count; ++i) {
        const std::uint64_t top = std::min(r.hi[i], t);
        total += top > r.lo[i] ? top - r.lo[i] : 0;
    }
    return total;
}

/// Number of r < x with r = c (mod K).
inline std::uint64_t residues_below(std::uint64_t x, std::uint64_t c, std::uint64_t K) {
    return x > c ? (x - c - 1) / K + 1 : 0;
}

inline std::uint64_t count_residue(const CyclicRanges& r, std::uint64_t c, std::uint64_t K) {
    std::uint64_t total = 0;
    for (int i = 0; i < r.count; ++i) {
        total += residues_below(r.hi[i], c, K) - residues_below(r.lo[i], c, K);
    }
    return total;
}

inline mpz_class to_mpz(unsigned __int128 value) {
    const auto high = static_cast<std::uint64_t>(value >> 64);
    const auto low = static_cast<std::uint64_t>(value);
    mpz_class result = mpz_class(std::to_string(high));
    result <<= 64;
    result += mpz_class(std::to_string(low));
    return result;
}

} // namespace detail

/// Seeds consistent with a bit prefix: a in [a_lo, a_hi), b in [b_lo, b_hi),
/// already clipped to [0, p).
struct SeedBox {
    std::uint64_t a_lo = 0;
    std::uint64_t a_hi = 0;
    std::uint64_t b_lo = 0;
    std::uint64_t b_hi = 0;

    [[nodiscard]] bool empty() const { return a_lo >= a_hi || b_lo >= b_hi; }
    [[nodiscard]] std::uint64_t size() const { return empty() ? 0 : (a_hi - a_lo) * (b_hi - b_lo); }
};

inline SeedBox seed_box(const HashFamily& h, std::uint64_t prefix, std::uint32_t prefix_len) {
    const std::uint32_t L = h.bits_per_half;
    SeedBox box;
    if (prefix_len <= L) {
        const std::uint32_t free = L - prefix_len;
        box.a_lo = prefix << free;
        box.a_hi = (prefix + 1) << free;
        box.b_lo = 0;
        box.b_hi = h.p;
    } else {
        const std::uint32_t b_fixed = prefix_len - L;
        const std::uint32_t free = L - b_fixed;
        box.a_lo = prefix >> b_fixed;
        box.a_hi = box.a_lo + 1;
        const std::uint64_t b_prefix = prefix & ((std::uint64_t{1} << b_fixed) - 1);
        box.b_lo = b_prefix << free;
        box.b_hi = (b_prefix + 1) << free;
    }
    box.a_hi = std::min(box.a_hi, h.p);
    box.b_hi = std::min(box.b_hi, h.p);
    return box;
}

/// Sum of Y over every seed in the box, where Y counts conflict edges whose
/// endpoints collide. Closed-form per (edge, a); no enumeration over b.
inline mpz_class conflict_total(const HashFamily& h, const ConflictEdges& edges, const SeedBox& box) {
    if (box.empty() || edges.empty()) {
        return 0;
    }
    const std::uint64_t p = h.p;
    const std::uint64_t K = h.K;
    const std::uint64_t len = box.b_hi - box.b_lo;
    unsigned __int128 total = 0;
    for (std::uint64_t a = box.a_lo; a < box.a_hi; ++a) {
        for (const auto& [u, v] : edges.open) {
            if (a == 0) {
                total += len;
                continue;
            }
            const std::uint64_t diff = (static_cast<std::uint64_t>(u) + p - v) % p;
            const std::uint64_t s = (a * diff) % p;
            const auto ranges = detail::cyclic_ranges((a * v + box.b_lo) % p, len, p);
            const std::uint64_t below = detail::count_below(ranges, p - s);
            if (s % K == 0) {
                total += below;
            }
            if (s % K == p % K) {
                total += len - below;
            }
        }
        for (const auto& [u, c] : edges.to_colored) {
            const auto ranges = detail::cyclic_ranges((a * u + box.b_lo) % p, len, p);
            total += detail::count_residue(ranges, c, K);
        }
    }
    return detail::to_mpz(total);
}

/// E[Y | seed in box] as an exact rational.
inline mpq_class conditional_expectation(const HashFamily& h, const ConflictEdges& edges, const SeedBox& box) {
    if (box.empty()) {
        throw std::invalid_argument("conditional_expectation: empty seed box");
    }
    mpq_class e(conflict_total(h, edges, box), mpz_class(std::to_string(box.size())));
    e.canonicalize();
    return e;
}

/// Record of one derandomized trial.
struct DerandIteration {
    std::uint32_t uncolored_before = 0;
    std::uint64_t K = 0;
    std::uint64_t p = 0;
    std::uint32_t seed_bits = 0;
    std::uint32_t batch_size = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::vector<mpq_class> expectations; ///< E[Y | prefix] before the first batch and after each batch
    std::uint64_t monochromatic = 0;     ///< Y under the chosen seed
    std::uint32_t uncolored_after = 0;
};

struct DerandResult {
    Coloring coloring;
    std::vector<DerandIteration> trace;
    std::uint64_t rounds_charged = 0;
};

/// Batch size floor((delta / 3) log2 n), at least 1.
inline std::uint32_t derand_batch_size(NodeId n, double delta) {
    const double raw = std::floor(delta / 3.0 * std::log2(std::max<double>(n, 1.0)));
    return static_cast<std::uint32_t>(std::max(1.0, raw));
}

/// Deterministic 2 x Delta coloring by repeated trials: each trial fixes the
/// hash seed batch by batch, always taking the batch value with the smallest
/// conditional expectation of conflicting edges (ties to the smaller value),
/// colors every node without a conflict, and retries on the rest.
inline DerandResult derand_color(const Graph& g_scope, std::uint64_t x, double delta) {
    if (x < 2) {
        throw std::invalid_argument("derand_color: x must be at least 2");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("derand_color: delta must lie in (0, 1)");
    }
    const NodeId n = g_scope.num_nodes();
    const HashFamily h = make_hash_family(n, x, g_scope.max_degree());
    const std::uint32_t batch = derand_batch_size(n, delta);
    const auto tree_depth = static_cast<std::uint64_t>(std::ceil(2.0 / delta));
    const std::uint32_t cap = 4 * std::max<std::uint32_t>(1, detail::ceil_log2(n));

    DerandResult result;
    result.coloring.color.assign(n, 0);
    result.coloring.palette = static_cast<std::uint32_t>(h.K);
    std::vector<char> colored(n, 0);
    std::vector<NodeId> uncolored(n);
    for (NodeId v = 0; v < n; ++v) {
        uncolored[v] = v;
    }

    while (!uncolored.empty()) {
        if (result.trace.size() >= cap) {
            throw DerandFailure("derand_color: " + std::to_string(uncolored.size()) + " nodes still uncolored after " +
                                std::to_string(cap) + " trials");
        }
        ConflictEdges edges;
        for (NodeId u : uncolored) {
            for (NodeId w : g_scope.neighbors(u)) {
                if (colored[w]) {
                    edges.to_colored.emplace_back(u, result.coloring.color[w]);
                } else if (u < w) {
                    edges.open.emplace_back(u, w);
                }
            }
        }

        DerandIteration it;
        it.uncolored_before = static_cast<std::uint32_t>(uncolored.size());
        it.K = h.K;
        it.p = h.p;
        it.seed_bits = h.seed_bits();
        it.batch_size = batch;

        std::uint64_t prefix = 0;
        std::uint32_t fixed = 0;
        it.expectations.push_back(conditional_expectation(h, edges, seed_box(h, 0, 0)));
        std::uint32_t batches = 0;
        while (fixed < it.seed_bits) {
            const std::uint32_t len = std::min(batch, it.seed_bits - fixed);
            bool found = false;
            mpq_class best;
            std::uint64_t best_value = 0;
            for (std::uint64_t value = 0; value < (std::uint64_t{1} << len); ++value) {
                const auto box = seed_box(h, (prefix << len) | value, fixed + len);
                if (box.empty()) {
                    continue;
                }
                mpq_class e = conditional_expectation(h, edges, box);
                if (!found || e < best) {
                    found = true;
                    best = e;
                    best_value = value;
                }
            }
            prefix = (prefix << len) | best_value;
            fixed += len;
            ++batches;
            it.expectations.push_back(best);
        }
        it.a = prefix >> h.bits_per_half;
        it.b = prefix & ((std::uint64_t{1} << h.bits_per_half) - 1);

        std::vector<std::uint64_t> tentative(n, 0);
        for (NodeId u : uncolored) {
            tentative[u] = h(it.a, it.b, u);
        }
        std::vector<char> conflict(n, 0);
        for (const auto& [u, v] : edges.open) {
            if (tentative[u] == tentative[v]) {
                conflict[u] = conflict[v] = 1;
                ++it.monochromatic;
            }
        }
        for (const auto& [u, c] : edges.to_colored) {
            if (tentative[u] == c) {
                conflict[u] = 1;
                ++it.monochromatic;
            }
        }
        std::vector<NodeId> rest;
        for (NodeId u : uncolored) {
            if (conflict[u]) {
                rest.push_back(u);
            } else {
                result.coloring.color[u] = static_cast<std::uint32_t>(tentative[u]);
                colored[u] = 1;
            }
        }
        uncolored = std::move(rest);
        it.uncolored_after = static_cast<std::uint32_t>(uncolored.size());
        result.rounds_charged += batches * tree_depth + tree_depth;
        result.trace.push_back(std::move(it));
    }
    return result;
}

} // namespace arbcolor
