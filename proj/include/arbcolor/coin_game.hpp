#pragma once

#include "arbcolor/detail/math.hpp"
#include "arbcolor/graph.hpp"
#include "arbcolor/partition.hpp"
#include "arbcolor/types.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arbcolor {

/// Probe accounting for one LCA query. Adjacency probes are memoized: each
/// explored node is charged for the prefix of its adjacency list that was
/// actually read.
struct QueryLedger {
    std::uint64_t adjacency_probes = 0;
    std::uint64_t degree_probes = 0;
    std::uint64_t explored_edges = 0; ///< |E(G[S_v])|

    friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

/// Explored region of one coin dropping game. Every per-node vector is aligned
/// with `explored`, which lists nodes in join order (root first).
struct CoinGameState {
    NodeId root = kInvalidNode;
    std::vector<NodeId> explored;
    std::unordered_map<NodeId, std::uint32_t> index;
    std::vector<std::vector<std::uint32_t>> local_adj;
    std::vector<std::uint32_t> probed_prefix;
    std::vector<Layer> sigma;               ///< S-induced layers, refreshed each super-iteration
    std::vector<std::vector<NodeId>> fsets; ///< forwarding sets, refreshed each super-iteration
    std::uint32_t super_iteration = 0;
    QueryLedger ledger;

    // Diagnostics of the most recent super-iteration.
    std::vector<std::pair<NodeId, mpq_class>> arrivals; ///< coins parked outside S before clearing
    std::vector<mpq_class> parked;                       ///< final inside holdings before clearing
    std::uint32_t last_growth = 0;
    std::uint64_t iterations_run = 0;

    [[nodiscard]] bool contains(NodeId v) const { return index.contains(v); }
    [[nodiscard]] std::size_t size() const { return explored.size(); }

    /// Explored set in ascending id order.
    [[nodiscard]] std::vector<NodeId> sorted_explored() const {
        std::vector<NodeId> s = explored;
        std::sort(s.begin(), s.end());
        return s;
    }
};

namespace detail {

inline void charge_prefix(CoinGameState& st, std::uint32_t local, std::uint32_t prefix) {
    auto& cur = st.probed_prefix[local];
    if (prefix > cur) {
        st.ledger.adjacency_probes += prefix - cur;
        cur = prefix;
    }
}

inline void join(const Graph& g, CoinGameState& st, NodeId w) {
    const auto local = static_cast<std::uint32_t>(st.explored.size());
    st.explored.push_back(w);
    st.index.emplace(w, local);
    st.local_adj.emplace_back();
    st.probed_prefix.push_back(0);
    st.sigma.push_back(kInfinity);
    st.fsets.emplace_back();
    ++st.ledger.degree_probes;

    const auto adj = g.neighbors(w);
    for (std::uint32_t pos = 0; pos < adj.size(); ++pos) {
        auto it = st.index.find(adj[pos]);
        if (it == st.index.end() || it->second == local) {
            continue;
        }
        const std::uint32_t other = it->second;
        st.local_adj[local].push_back(other);
        st.local_adj[other].push_back(local);
        ++st.ledger.explored_edges;
        charge_prefix(st, local, pos + 1);
        charge_prefix(st, other, static_cast<std::uint32_t>(g.neighbor_index(adj[pos], w)) + 1);
    }
}

inline CoinGameState initial_state(const Graph& g, NodeId v) {
    if (v >= g.num_nodes()) {
        throw std::invalid_argument("coin game: root out of range");
    }
    CoinGameState st;
    st.root = v;
    join(g, st, v);
    return st;
}

/// Recomputes sigma over the explored set and every forwarding set, charging
/// the adjacency scans needed to find outside targets.
inline void refresh_sigma_and_fsets(const Graph& g, CoinGameState& st, std::uint32_t beta) {
    st.sigma = peel_layers(
        st.explored.size(), [&](std::size_t i) { return g.degree(st.explored[i]); },
        [&](std::uint32_t i) -> const std::vector<std::uint32_t>& { return st.local_adj[i]; }, beta);

    const std::size_t want_total = static_cast<std::size_t>(beta) + 1;
    for (std::uint32_t i = 0; i < st.explored.size(); ++i) {
        const NodeId u = st.explored[i];
        const auto adj = g.neighbors(u);
        const std::size_t want = std::min<std::size_t>(adj.size(), want_total);
        auto& f = st.fsets[i];
        f.clear();

        std::size_t scanned = 0;
        while (scanned < adj.size() && f.size() < want) {
            if (!st.contains(adj[scanned])) {
                f.push_back(adj[scanned]);
            }
            ++scanned;
        }
        charge_prefix(st, i, static_cast<std::uint32_t>(scanned));
        if (f.size() == want) {
            continue;
        }

        std::vector<std::uint32_t> inside = st.local_adj[i];
        std::sort(inside.begin(), inside.end(), [&](std::uint32_t a, std::uint32_t b) {
            return forwarding_rank(st.sigma[a], true, st.explored[a]) <
                   forwarding_rank(st.sigma[b], true, st.explored[b]);
        });
        for (std::uint32_t j : inside) {
            if (f.size() == want) {
                break;
            }
            f.push_back(st.explored[j]);
        }
    }
}

/// Forwarding iterations per super-iteration.
inline std::uint64_t iteration_cap(NodeId n, std::uint64_t x, std::uint32_t beta) {
    if (n <= 10'000) {
        return n;
    }
    return std::min<std::uint64_t>(n, 2 * x * x * (static_cast<std::uint64_t>(beta) + 2));
}

/// Inside holdings as integer numerators over one shared denominator, which
/// avoids a gcd per arithmetic step. reduce() brings the pair to lowest terms,
/// where equal holdings have equal representations.
struct ScaledHoldings {
    std::vector<mpz_class> num;
    mpz_class den = 1;

    void reduce() {
        mpz_class g = den;
        for (const auto& n : num) {
            if (g == 1) {
                return;
            }
            if (sgn(n) != 0) {
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == 1) {
            return;
        }
        for (auto& n : num) {
            if (sgn(n) != 0) {
                mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
            }
        }
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }

    friend bool operator==(const ScaledHoldings&, const ScaledHoldings&) = default;
};

/// Forwarding iterations between exact-state checkpoints.
inline constexpr std::uint64_t kCheckpointStride = 16;

/// One super-iteration in place: refresh sigma and F, drop x coins on the root,
/// forward synchronously, then let every outside node holding coins join.
inline void super_iteration_in_place(const Graph& g, CoinGameState& st, std::uint64_t x, std::uint32_t beta) {
    refresh_sigma_and_fsets(g, st, beta);

    const std::size_t k = st.explored.size();
    // Targets as local indices; outside nodes are encoded as ~slot.
    std::vector<NodeId> outside_ids;
    std::unordered_map<NodeId, std::uint32_t> outside_slot;
    std::vector<std::vector<std::int64_t>> targets(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (NodeId w : st.fsets[i]) {
            if (auto found = st.index.find(w); found != st.index.end()) {
                targets[i].push_back(found->second);
                continue;
            }
            auto [slot, fresh] = outside_slot.emplace(w, static_cast<std::uint32_t>(outside_ids.size()));
            if (fresh) {
                outside_ids.push_back(w);
            }
            targets[i].push_back(~static_cast<std::int64_t>(slot->second));
        }
    }
    std::vector<mpq_class> outside(outside_ids.size());

    ScaledHoldings hold;
    hold.num.assign(k, 0);
    hold.num[0] = static_cast<unsigned long>(x);
    ScaledHoldings next;
    next.num.assign(k, 0);

    std::vector<mpz_class> threshold(static_cast<std::size_t>(beta) + 2);
    std::vector<char> forwards(k, 0);
    ScaledHoldings tortoise = hold;
    std::uint64_t power = 1;
    std::uint64_t lam = 0;
    const std::uint64_t cap = iteration_cap(g.num_nodes(), x, beta);
    std::uint64_t it = 0;
    while (it < cap) {
        std::fill(threshold.begin(), threshold.end(), 0);
        mpz_class scale = 1;
        bool moved = false;
        for (std::size_t i = 0; i < k; ++i) {
            forwards[i] = 0;
            const std::size_t f = targets[i].size();
            if (f == 0 || sgn(hold.num[i]) == 0) {
                continue;
            }
            if (sgn(threshold[f]) == 0) {
                threshold[f] = hold.den * static_cast<unsigned long>(f);
            }
            if (hold.num[i] >= threshold[f]) {
                forwards[i] = 1;
                moved = true;
                mpz_lcm_ui(scale.get_mpz_t(), scale.get_mpz_t(), f);
            }
        }
        if (!moved) {
            break;
        }
        mpz_class share;
        for (std::size_t i = 0; i < k; ++i) {
            if (sgn(hold.num[i]) == 0) {
                continue;
            }
            if (!forwards[i]) {
                mpz_addmul(next.num[i].get_mpz_t(), hold.num[i].get_mpz_t(), scale.get_mpz_t());
                continue;
            }
            const auto f = static_cast<unsigned long>(targets[i].size());
            mpz_divexact_ui(share.get_mpz_t(), scale.get_mpz_t(), f);
            share *= hold.num[i];
            std::optional<mpq_class> piece;
            for (std::int64_t t : targets[i]) {
                if (t >= 0) {
                    next.num[t] += share;
                    continue;
                }
                if (!piece) {
                    piece.emplace(hold.num[i], hold.den * f);
                    piece->canonicalize();
                }
                outside[~t] += *piece;
            }
        }
        next.den = hold.den * scale;
        std::swap(hold, next);
        for (auto& n : next.num) {
            n = 0;
        }
        ++it;
        if (it % kCheckpointStride != 0) {
            continue;
        }
        // Brent cycle detection over checkpoint states. A repeated inside
        // state means no coins leave S from here on, so the remaining
        // iterations change nothing observable.
        hold.reduce();
        if (hold == tortoise) {
            break;
        }
        if (++lam == power) {
            tortoise = hold;
            power *= 2;
            lam = 0;
        }
    }
    st.iterations_run = it;

    st.parked.clear();
    for (const auto& n : hold.num) {
        mpq_class q(n, hold.den);
        q.canonicalize();
        st.parked.push_back(std::move(q));
    }
    std::vector<std::uint32_t> order(outside_ids.size());
    for (std::uint32_t s = 0; s < order.size(); ++s) {
        order[s] = s;
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return outside_ids[a] < outside_ids[b]; });
    st.arrivals.clear();
    for (auto s : order) {
        if (sgn(outside[s]) > 0) {
            st.arrivals.emplace_back(outside_ids[s], outside[s]);
        }
    }
    const std::size_t before = st.explored.size();
    for (const auto& [w, coins] : st.arrivals) {
        join(g, st, w);
    }
    st.last_growth = static_cast<std::uint32_t>(st.explored.size() - before);
    ++st.super_iteration;
}

} // namespace detail

/// Fresh game state rooted at v (S_v = {v}).
inline CoinGameState start_coin_game(const Graph& g, NodeId v) { return detail::initial_state(g, v); }

/// Runs one super-iteration of the coin dropping game and returns the new state.
inline CoinGameState run_super_iteration(const Graph& g, CoinGameState st, std::uint64_t x, std::uint32_t beta) {
    if (x < 1 || beta < 1) {
        throw std::invalid_argument("run_super_iteration: need x >= 1 and beta >= 1");
    }
    if (st.super_iteration >= x * x) {
        throw std::invalid_argument("run_super_iteration: all x^2 super-iterations already used");
    }
    detail::super_iteration_in_place(g, st, x, beta);
    return st;
}

struct ProofEntry {
    NodeId node = kInvalidNode;
    Layer layer;

    friend bool operator==(const ProofEntry&, const ProofEntry&) = default;
};

/// Result of one LCA query. The proof is stored sparsely: only its finite
/// entries, in ascending node order.
struct LcaOutput {
    NodeId root = kInvalidNode;
    std::uint32_t beta = 1;
    std::vector<ProofEntry> proof;
    Layer layer_of_root;
    QueryLedger ledger;
    std::uint32_t super_iterations = 0;
    std::uint32_t max_growth = 0;
    std::uint32_t explored_count = 0;

    /// The proof as a partial beta-partition over n nodes.
    [[nodiscard]] PartialBetaPartition dense_proof(NodeId n) const {
        PartialBetaPartition p(beta, n);
        for (const auto& e : proof) {
            p.layer[e.node] = e.layer;
        }
        return p;
    }
};

/// Largest layer an LCA query may certify: floor(log_{beta+1} x).
inline std::uint32_t lca_layer_threshold(std::uint64_t x, std::uint32_t beta) {
    return detail::floor_log(static_cast<std::uint64_t>(beta) + 1, x);
}

/// Per-node LCA: grow S_v by up to x^2 super-iterations (stopping once S_v is
/// stable), then report sigma_{S_v} restricted to layers <= the threshold.
inline LcaOutput lca_query(const Graph& g, NodeId v, std::uint64_t x, std::uint32_t beta) {
    if (x < 2 || beta < 1) {
        throw std::invalid_argument("lca_query: need x >= 2 and beta >= 1");
    }
    auto st = detail::initial_state(g, v);
    LcaOutput out;
    out.root = v;
    out.beta = beta;
    const std::uint64_t rounds = x * x;
    for (std::uint64_t i = 0; i < rounds; ++i) {
        detail::super_iteration_in_place(g, st, x, beta);
        out.max_growth = std::max(out.max_growth, st.last_growth);
        if (st.last_growth == 0) {
            break;
        }
    }
    detail::refresh_sigma_and_fsets(g, st, beta);
    const std::uint32_t threshold = lca_layer_threshold(x, beta);
    for (std::uint32_t i = 0; i < st.explored.size(); ++i) {
        if (st.sigma[i].is_finite() && st.sigma[i].value() <= threshold) {
            out.proof.push_back({st.explored[i], st.sigma[i]});
        }
    }
    std::sort(out.proof.begin(), out.proof.end(), [](const auto& a, const auto& b) { return a.node < b.node; });
    out.layer_of_root = st.sigma[0].is_finite() && st.sigma[0].value() <= threshold ? st.sigma[0] : kInfinity;
    out.ledger = st.ledger;
    out.super_iterations = st.super_iteration;
    out.explored_count = static_cast<std::uint32_t>(st.explored.size());
    return out;
}

/// lca_query for every node, indexed by node id.
inline std::vector<LcaOutput> lca_sweep(const Graph& g, std::uint64_t x, std::uint32_t beta) {
    std::vector<LcaOutput> out;
    out.reserve(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        out.push_back(lca_query(g, v, x, beta));
    }
    return out;
}

} // namespace arbcolor
