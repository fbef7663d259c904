#pragma once

#include "arbcolor/coin_game.hpp"
#include "arbcolor/detail/math.hpp"
#include "arbcolor/graph.hpp"
#include "arbcolor/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbcolor {

/// Parameters of the simulated AMPC partition pipeline. Machine space is
/// ceil(n^delta); the LCA budget is x = max(2, floor(n^(delta/c))) unless
/// x_override is set.
struct PipelineConfig {
    double delta = 0.5;
    double c = 7.0;
    double epsilon = 1.0;
    std::uint32_t beta = 0;
    std::optional<std::uint64_t> x_override;
    std::optional<std::uint32_t> alpha_hint;

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0)) {
            throw std::invalid_argument("PipelineConfig: delta must lie in (0, 1)");
        }
        if (!(c > 6.0)) {
            throw std::invalid_argument("PipelineConfig: c must exceed 6");
        }
        if (!(epsilon > 0.0)) {
            throw std::invalid_argument("PipelineConfig: epsilon must be positive");
        }
        if (x_override && *x_override < 2) {
            throw std::invalid_argument("PipelineConfig: x must be at least 2");
        }
    }

    [[nodiscard]] std::uint64_t x_for(NodeId n) const {
        if (x_override) {
            return *x_override;
        }
        const double raw = std::floor(std::pow(static_cast<double>(n), delta / c));
        return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(raw));
    }

    /// Per-round shrink exponent used by the round budget: delta/c - (delta/c)^2.
    [[nodiscard]] double analysis_d() const {
        const double r = delta / c;
        return r - r * r;
    }

    [[nodiscard]] std::uint64_t space_budget(NodeId n) const {
        return static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), delta)));
    }
};

/// ceil((2 + epsilon) * alpha).
inline std::uint32_t beta_for_alpha(std::uint32_t alpha, double epsilon) {
    return static_cast<std::uint32_t>(std::ceil((2.0 + epsilon) * alpha - 1e-9));
}

/// Round budget ceil(log_{beta/(2 alpha)}(beta+1) / d) + 4 for a guess alpha.
inline std::uint32_t round_budget(std::uint32_t alpha, std::uint32_t beta, const PipelineConfig& cfg) {
    const double ratio = static_cast<double>(beta) / (2.0 * alpha);
    if (!(ratio > 1.0)) {
        throw std::invalid_argument("round_budget: need beta > 2 alpha");
    }
    const double rounds = detail::log_base(ratio, beta + 1.0) / cfg.analysis_d();
    return static_cast<std::uint32_t>(std::ceil(rounds)) + 4;
}

struct RoundStats {
    std::uint64_t max_machine_reads = 0;
    std::uint64_t max_machine_writes = 0;
    std::uint64_t max_explored_edges = 0;
    std::uint32_t nodes_remaining = 0; ///< |V_i| at the start of the round
    bool peel = false;
};

struct RoundLedger {
    std::uint32_t rounds = 0;
    std::vector<RoundStats> per_round;
    std::uint64_t space_budget = 0;

    void push(const RoundStats& stats) {
        per_round.push_back(stats);
        rounds = static_cast<std::uint32_t>(per_round.size());
    }

    [[nodiscard]] std::uint64_t max_machine_reads() const {
        std::uint64_t best = 0;
        for (const auto& r : per_round) {
            best = std::max(best, r.max_machine_reads);
        }
        return best;
    }
};

enum class PipelineMode { LcaPipeline, Peel, Hybrid };
enum class PipelineStatus { Ok, FailedToProgress };

inline const char* to_string(PipelineMode mode) {
    switch (mode) {
    case PipelineMode::LcaPipeline:
        return "LCA_PIPELINE";
    case PipelineMode::Peel:
        return "PEEL";
    case PipelineMode::Hybrid:
        return "HYBRID";
    }
    return "?";
}

inline const char* to_string(PipelineStatus status) {
    return status == PipelineStatus::Ok ? "OK" : "FAILED_TO_PROGRESS";
}

struct PipelineResult {
    PartialBetaPartition partition;
    RoundLedger ledger;
    std::vector<std::uint32_t> per_round_layer_offsets;
    PipelineMode mode = PipelineMode::LcaPipeline;
    PipelineStatus status = PipelineStatus::Ok;
    std::uint64_t x = 0;
    std::string diagnostics;

    [[nodiscard]] bool ok() const { return status == PipelineStatus::Ok; }
};

namespace detail {

/// Peels `remaining` (global ids) one layer per round starting at layer
/// `offset`, writing layers into `result`. Returns false on a stalled round.
inline bool peel_remainder(const Graph& g, std::vector<NodeId> remaining, std::uint32_t offset,
                           PipelineResult& result) {
    const std::uint32_t beta = result.partition.beta;
    std::vector<char> alive(g.num_nodes(), 0);
    for (NodeId v : remaining) {
        alive[v] = 1;
    }
    std::vector<std::uint32_t> deg(g.num_nodes(), 0);
    for (NodeId v : remaining) {
        for (NodeId w : g.neighbors(v)) {
            deg[v] += alive[w];
        }
    }
    std::uint32_t layer = offset;
    while (!remaining.empty()) {
        RoundStats stats;
        stats.nodes_remaining = static_cast<std::uint32_t>(remaining.size());
        stats.peel = true;
        std::vector<NodeId> removed;
        std::vector<NodeId> kept;
        for (NodeId v : remaining) {
            (deg[v] <= beta ? removed : kept).push_back(v);
        }
        if (removed.empty()) {
            std::uint32_t min_degree = deg[remaining.front()];
            for (NodeId v : remaining) {
                min_degree = std::min(min_degree, deg[v]);
            }
            result.status = PipelineStatus::FailedToProgress;
            result.diagnostics = "peeling stalled: " + std::to_string(remaining.size()) +
                                 " nodes remain with minimum degree " + std::to_string(min_degree) + " > beta " +
                                 std::to_string(beta);
            return false;
        }
        stats.max_machine_reads = 1;
        stats.max_machine_writes = 1;
        result.ledger.push(stats);
        result.per_round_layer_offsets.push_back(layer);
        for (NodeId v : removed) {
            result.partition.layer[v] = Layer{layer};
            alive[v] = 0;
        }
        for (NodeId v : removed) {
            for (NodeId w : g.neighbors(v)) {
                if (alive[w]) {
                    --deg[w];
                }
            }
        }
        remaining = std::move(kept);
        ++layer;
    }
    return true;
}

} // namespace detail

/// Layer-by-layer peeling, one AMPC round per layer. On success the result is
/// exactly natural_partition(g, beta).
inline PipelineResult peel_pipeline(const Graph& g, std::uint32_t beta) {
    if (beta < 1) {
        throw std::invalid_argument("peel_pipeline: beta must be >= 1");
    }
    PipelineResult result;
    result.partition = PartialBetaPartition(beta, g.num_nodes());
    result.mode = PipelineMode::Peel;
    std::vector<NodeId> all(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        all[v] = v;
    }
    detail::peel_remainder(g, std::move(all), 0, result);
    return result;
}

/// Repeated LCA rounds: every remaining node runs lca_query on the remaining
/// subgraph, proofs are min-merged, the new layers are appended above all
/// earlier ones, and the still-infinite nodes form the next round's graph. A
/// round that removes nothing hands the remainder to peeling.
inline PipelineResult partition_pipeline(const Graph& g, const PipelineConfig& cfg) {
    cfg.validate();
    if (cfg.beta < 1) {
        throw std::invalid_argument("partition_pipeline: beta must be >= 1");
    }
    const std::uint32_t beta = cfg.beta;
    PipelineResult result;
    result.partition = PartialBetaPartition(beta, g.num_nodes());
    result.x = cfg.x_for(g.num_nodes());
    result.ledger.space_budget = cfg.space_budget(g.num_nodes());
    result.mode = PipelineMode::LcaPipeline;

    std::vector<NodeId> remaining(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        remaining[v] = v;
    }
    std::uint32_t offset = 0;
    while (!remaining.empty()) {
        auto [sub, map] = induced_subgraph(g, remaining);
        std::vector<Layer> merged(sub.num_nodes(), kInfinity);
        RoundStats stats;
        stats.nodes_remaining = static_cast<std::uint32_t>(remaining.size());
        for (NodeId v = 0; v < sub.num_nodes(); ++v) {
            const auto out = lca_query(sub, v, result.x, beta);
            for (const auto& e : out.proof) {
                merged[e.node] = std::min(merged[e.node], e.layer);
            }
            stats.max_machine_reads =
                std::max(stats.max_machine_reads, out.ledger.adjacency_probes + out.ledger.degree_probes);
            stats.max_machine_writes = std::max<std::uint64_t>(stats.max_machine_writes, out.proof.size());
            stats.max_explored_edges = std::max(stats.max_explored_edges, out.ledger.explored_edges);
        }

        std::vector<NodeId> kept;
        std::uint32_t top = 0;
        bool any = false;
        for (NodeId v = 0; v < sub.num_nodes(); ++v) {
            if (merged[v].is_finite()) {
                any = true;
                top = std::max(top, merged[v].value());
            } else {
                kept.push_back(map.new_to_old[v]);
            }
        }
        if (!any) {
            result.mode = PipelineMode::Hybrid;
            detail::peel_remainder(g, std::move(remaining), offset, result);
            return result;
        }
        result.ledger.push(stats);
        result.per_round_layer_offsets.push_back(offset);
        for (NodeId v = 0; v < sub.num_nodes(); ++v) {
            if (merged[v].is_finite()) {
                result.partition.layer[map.new_to_old[v]] = Layer{offset + merged[v].value()};
            }
        }
        offset += top + 1;
        remaining = std::move(kept);
    }
    return result;
}

struct GuessAttempt {
    std::uint32_t alpha = 0;
    std::uint32_t beta = 0;
    std::uint32_t rounds = 0;
    std::uint32_t budget = 0;
    PipelineMode mode = PipelineMode::LcaPipeline;
    PipelineStatus status = PipelineStatus::Ok;
    bool success = false;
    bool refine = false; ///< part of the second phase
};

struct GuessResult {
    PipelineResult result;
    std::uint32_t alpha_estimate = 0;
    std::uint32_t phase1_estimate = 0; ///< first doubly-exponential guess that succeeded
    std::uint32_t charged_rounds = 0;  ///< phase-1 total plus the slowest phase-2 run
    std::vector<GuessAttempt> attempts;
};

/// Arboricity-oblivious partitioning. Phase 1 tries alpha_i = 2^(2^i) until a
/// run stays in LCA mode and within round_budget(); phase 2 refines between
/// sqrt(a_k) and a_k in (1 + eps_refine) steps and keeps the smallest success.
inline GuessResult guess_arboricity_pipeline(const Graph& g, PipelineConfig cfg, double eps_refine) {
    cfg.validate();
    if (!(eps_refine > 0.0)) {
        throw std::invalid_argument("guess_arboricity_pipeline: eps_refine must be positive");
    }
    if (g.num_nodes() == 0) {
        throw std::invalid_argument("guess_arboricity_pipeline: empty graph");
    }
    GuessResult out;
    auto attempt = [&](std::uint32_t alpha, bool refine) {
        cfg.beta = beta_for_alpha(alpha, cfg.epsilon);
        auto run = partition_pipeline(g, cfg);
        GuessAttempt a;
        a.alpha = alpha;
        a.beta = cfg.beta;
        a.rounds = run.ledger.rounds;
        a.budget = round_budget(alpha, cfg.beta, cfg);
        a.mode = run.mode;
        a.status = run.status;
        a.success = run.ok() && run.mode == PipelineMode::LcaPipeline && a.rounds <= a.budget;
        a.refine = refine;
        out.attempts.push_back(a);
        return std::pair{a, std::move(run)};
    };

    std::uint32_t phase1_rounds = 0;
    PipelineResult phase1;
    std::uint32_t a_k = 0;
    // Once a guess reaches n every degree is at most beta, so that guess
    // always succeeds in a single round.
    const std::uint64_t ceiling = std::max<std::uint64_t>(2, g.num_nodes());
    for (std::uint32_t i = 0;; ++i) {
        const std::uint64_t alpha =
            i >= 6 ? ceiling : std::min(ceiling, std::uint64_t{1} << (std::uint64_t{1} << i));
        auto [a, run] = attempt(static_cast<std::uint32_t>(alpha), false);
        phase1_rounds += a.rounds;
        if (a.success || alpha == ceiling) {
            a_k = a.alpha;
            phase1 = std::move(run);
            break;
        }
    }
    out.phase1_estimate = a_k;

    const double root = std::sqrt(static_cast<double>(a_k));
    const auto steps = static_cast<std::uint32_t>(std::ceil(detail::log_base(1.0 + eps_refine, root) - 1e-12));
    std::uint32_t phase2_max = 0;
    std::optional<std::pair<std::uint32_t, PipelineResult>> best;
    std::uint32_t last_alpha = 0;
    for (std::uint32_t j = 0; j <= steps; ++j) {
        const auto alpha = static_cast<std::uint32_t>(std::ceil(root * std::pow(1.0 + eps_refine, j) - 1e-9));
        if (alpha == last_alpha) {
            continue;
        }
        last_alpha = alpha;
        auto [a, run] = attempt(std::max<std::uint32_t>(alpha, 1), true);
        phase2_max = std::max(phase2_max, a.rounds);
        if (a.success && (!best || a.alpha < best->first)) {
            best.emplace(a.alpha, std::move(run));
        }
    }
    out.charged_rounds = phase1_rounds + phase2_max;
    if (best) {
        out.alpha_estimate = best->first;
        out.result = std::move(best->second);
    } else {
        out.alpha_estimate = a_k;
        out.result = std::move(phase1);
    }
    return out;
}

struct ShrinkRow {
    std::uint32_t round = 0;
    std::uint32_t remaining = 0; ///< |V_i|
    double cap = 0.0;            ///< n * f^i
    bool exceeds = false;
};

struct ShrinkReport {
    double factor = 0.0; ///< f = 2^(1 - log2 x / log_{beta/(2 alpha)}(beta+1))
    bool vacuous = false;
    std::uint32_t flagged = 0;
    std::vector<ShrinkRow> rows;
    PipelineResult result;
};

/// Per-round shrink factor bound for certified arboricity alpha.
inline double shrink_factor(std::uint64_t x, std::uint32_t beta, std::uint32_t alpha) {
    const double ratio = static_cast<double>(beta) / (2.0 * alpha);
    if (!(ratio > 1.0)) {
        throw std::invalid_argument("shrink_factor: need beta > 2 alpha");
    }
    return std::pow(2.0, 1.0 - std::log2(static_cast<double>(x)) / detail::log_base(ratio, beta + 1.0));
}

/// Compares |V_i| of each pipeline round with the cap n * f^i.
inline ShrinkReport shrink_report(const Graph& g, const PipelineConfig& cfg, std::uint32_t alpha_cert) {
    ShrinkReport report;
    report.result = partition_pipeline(g, cfg);
    report.factor = shrink_factor(report.result.x, cfg.beta, alpha_cert);
    report.vacuous = report.factor >= 1.0;
    const double n = g.num_nodes();
    for (std::uint32_t i = 0; i < report.result.ledger.per_round.size(); ++i) {
        ShrinkRow row;
        row.round = i;
        row.remaining = report.result.ledger.per_round[i].nodes_remaining;
        row.cap = n * std::pow(report.factor, i);
        row.exceeds = !report.vacuous && row.remaining > row.cap;
        report.flagged += row.exceeds ? 1 : 0;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace arbcolor
