#pragma once

#include "arbcolor/ampc.hpp"
#include "arbcolor/coloring.hpp"
#include "arbcolor/derand.hpp"
#include "arbcolor/detail/math.hpp"
#include "arbcolor/kuhn_wattenhofer.hpp"
#include "arbcolor/linial.hpp"
#include "arbcolor/recolor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arbcolor {

enum class ColorPipeline { P1, P2, P3, LargePoly, LargeLinear, Derand };

inline const char* to_string(ColorPipeline p) {
    switch (p) {
    case ColorPipeline::P1:
        return "p1";
    case ColorPipeline::P2:
        return "p2";
    case ColorPipeline::P3:
        return "p3";
    case ColorPipeline::LargePoly:
        return "large-poly";
    case ColorPipeline::LargeLinear:
        return "large-linear";
    case ColorPipeline::Derand:
        return "derand";
    }
    return "?";
}

inline std::optional<ColorPipeline> parse_color_pipeline(const std::string& name) {
    for (auto p : {ColorPipeline::P1, ColorPipeline::P2, ColorPipeline::P3, ColorPipeline::LargePoly,
                   ColorPipeline::LargeLinear, ColorPipeline::Derand}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    return std::nullopt;
}

/// Certified arboricity plus the partition parameters; `partition.beta` is
/// chosen by each pipeline. `derand_x` is used only by the derand pipeline.
struct ColorConfig {
    std::uint32_t alpha = 1;
    PipelineConfig partition;
    std::uint64_t derand_x = 2;
};

struct PhaseCharge {
    std::string name;
    std::uint64_t rounds = 0;
};

struct ColoringReport {
    ColorPipeline pipeline = ColorPipeline::P3;
    Coloring coloring;
    std::optional<PipelineResult> partition;
    std::uint32_t beta = 0;
    std::uint64_t palette_bound = 0;
    std::uint64_t pre_recolor_conflicts = 0;
    std::vector<PhaseCharge> phases;
    std::vector<std::string> notes;

    [[nodiscard]] std::uint64_t rounds_charged() const {
        std::uint64_t total = 0;
        for (const auto& p : phases) {
            total += p.rounds;
        }
        return total;
    }
};

/// Thrown when the partition stage cannot produce a full beta-partition.
class PipelineFailure : public std::runtime_error {
public:
    PipelineFailure(const std::string& what, PipelineResult r) : std::runtime_error(what), result(std::move(r)) {}
    PipelineResult result;
};

/// ceil(alpha^(1 + epsilon)).
inline std::uint32_t poly_beta(std::uint32_t alpha, double epsilon) {
    return static_cast<std::uint32_t>(std::ceil(std::pow(static_cast<double>(alpha), 1.0 + epsilon) - 1e-9));
}

/// Largest recipe palette over all out-degrees up to beta, so the bound is
/// monotone in beta.
inline std::uint64_t linial_recipe_bound(std::uint64_t m, std::uint32_t beta, std::uint32_t steps_limit) {
    std::uint64_t best = 1;
    for (std::uint32_t b = 0; b <= beta; ++b) {
        best = std::max(best, linial_palette_bound(m, b, steps_limit));
    }
    return best;
}

namespace detail {

inline PipelineResult full_partition(const Graph& g, PipelineConfig cfg, std::uint32_t beta) {
    cfg.beta = beta;
    auto r = partition_pipeline(g, cfg);
    if (!r.ok()) {
        throw PipelineFailure("partition stage failed: " + r.diagnostics, std::move(r));
    }
    return r;
}

struct LayerPiece {
    Graph graph;
    NodeMapping map;
};

inline std::vector<LayerPiece> layer_pieces(const Graph& g, const PartialBetaPartition& p) {
    std::map<Layer, std::vector<NodeId>> by_layer;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        by_layer[p.layer[v]].push_back(v);
    }
    std::vector<LayerPiece> pieces;
    for (const auto& [layer, nodes] : by_layer) {
        auto [sub, map] = induced_subgraph(g, nodes);
        pieces.push_back({std::move(sub), std::move(map)});
    }
    return pieces;
}

/// Orientation of a single-layer graph from lower to higher id.
inline Orientation id_orientation(const Graph& g) {
    PartialBetaPartition flat(std::max<std::uint32_t>(1, g.max_degree()), g.num_nodes());
    std::fill(flat.layer.begin(), flat.layer.end(), Layer{0});
    return orient_by_partition(g, flat, IntraRule::LayerThenId);
}

inline double log2n(const Graph& g) { return std::log2(std::max<double>(2.0, g.num_nodes())); }

inline ColoringReport linial_pipeline(const Graph& g, const ColorConfig& cfg, ColorPipeline which,
                                      std::uint32_t beta, bool single_step, bool round_per_step) {
    ColoringReport rep;
    rep.pipeline = which;
    rep.beta = beta;
    rep.partition = full_partition(g, cfg.partition, beta);
    rep.phases.push_back({"partition", rep.partition->ledger.rounds});
    const auto o = orient_by_partition(g, rep.partition->partition, IntraRule::LayerThenId);
    const std::uint64_t m = std::max<NodeId>(1, g.num_nodes());
    if (single_step) {
        rep.coloring = Coloring::from_ids(g.num_nodes());
        const auto [q, d] = linial_params(m, o.max_out_degree());
        if (o.num_edges() == 0) {
            std::fill(rep.coloring.color.begin(), rep.coloring.color.end(), 0);
            rep.coloring.palette = 1;
        } else if (q * q < m) {
            rep.coloring = arb_linial_step(o, rep.coloring);
        }
        rep.phases.push_back({"linial-first-step", 1});
        rep.palette_bound = linial_recipe_bound(m, beta, 1);
        rep.notes.push_back("single step: alpha^epsilon exceeds log2 n");
        return rep;
    }
    auto lin = arb_linial_full(o);
    rep.coloring = std::move(lin.coloring);
    rep.phases.push_back({"linial", round_per_step ? std::max<std::uint64_t>(1, lin.steps) : 1});
    rep.palette_bound = linial_recipe_bound(m, beta, 0xFFFFFFFFu);
    const double ball = lin.steps * std::log2(std::max<double>(2.0, o.max_out_degree()));
    const double space = cfg.partition.delta * log2n(g);
    rep.notes.push_back("linial steps " + std::to_string(lin.steps) + "; out-ball fits in machine space: " +
                        (ball <= space ? "yes" : "no"));
    return rep;
}

} // namespace detail

/// Partition with beta = ceil(alpha^(1+eps)), then Arb-Linial: one step when
/// alpha^eps > log2 n, otherwise the full reduction gathered in one round.
inline ColoringReport color_pipeline_1(const Graph& g, const ColorConfig& cfg) {
    const std::uint32_t beta = std::max<std::uint32_t>(1, poly_beta(cfg.alpha, cfg.partition.epsilon));
    const bool single = std::pow(static_cast<double>(cfg.alpha), cfg.partition.epsilon) > detail::log2n(g);
    return detail::linial_pipeline(g, cfg, ColorPipeline::P1, beta, single, false);
}

/// Partition with beta = ceil((2+eps) alpha), then the full Arb-Linial
/// reduction; one round per step when alpha > 2^(log* n), else one round.
inline ColoringReport color_pipeline_2(const Graph& g, const ColorConfig& cfg) {
    const std::uint32_t beta = beta_for_alpha(cfg.alpha, cfg.partition.epsilon);
    const double threshold = std::pow(2.0, detail::log_star(std::max<double>(2.0, g.num_nodes())));
    return detail::linial_pipeline(g, cfg, ColorPipeline::P2, beta, false, cfg.alpha > threshold);
}

/// (beta+1)-coloring: per-layer Linial then block halving to beta+1 colors,
/// then recoloring from the top layer down with the highest free color.
inline ColoringReport color_pipeline_3(const Graph& g, const ColorConfig& cfg) {
    ColoringReport rep;
    rep.pipeline = ColorPipeline::P3;
    rep.beta = beta_for_alpha(cfg.alpha, cfg.partition.epsilon);
    rep.partition = detail::full_partition(g, cfg.partition, rep.beta);
    const auto& part = rep.partition->partition;
    rep.phases.push_back({"partition", rep.partition->ledger.rounds});

    Coloring initial;
    initial.color.assign(g.num_nodes(), 0);
    initial.palette = rep.beta + 1;
    initial.scope = ColoringScope::PerLayer;
    std::uint32_t linial_steps = 0;
    std::uint32_t kw_rounds = 0;
    const auto pieces = detail::layer_pieces(g, part);
    for (const auto& piece : pieces) {
        auto lin = arb_linial_full(detail::id_orientation(piece.graph));
        auto kw = kw_reduce(piece.graph, lin.coloring, rep.beta);
        linial_steps = std::max(linial_steps, lin.steps);
        kw_rounds = std::max(kw_rounds, kw.sub_rounds);
        for (NodeId i = 0; i < piece.graph.num_nodes(); ++i) {
            initial.color[piece.map.new_to_old[i]] = kw.coloring.color[i];
        }
    }
    rep.pre_recolor_conflicts = monochromatic_edges(g, initial).size();

    const bool stepwise = cfg.alpha > detail::log_star(std::max<double>(2.0, g.num_nodes()));
    rep.phases.push_back({"linial", stepwise ? std::max<std::uint64_t>(1, linial_steps) : 1});
    rep.phases.push_back({"kw", kw_rounds});

    auto rc = recolor_conflicts(g, part, initial, ColorPick::Highest);
    rep.coloring = std::move(rc.coloring);
    const double b = std::max<double>(2.0, rep.beta);
    const double raw = cfg.partition.c * cfg.partition.delta / b * detail::log_base(b, std::max<double>(2.0, g.num_nodes()));
    const auto batch = static_cast<std::uint64_t>(std::max(1.0, std::ceil(raw)));
    rep.phases.push_back({"recolor", (pieces.size() + batch - 1) / batch});
    rep.palette_bound = rep.beta + 1;
    rep.notes.push_back("recolor batch " + std::to_string(batch) + " layers");
    return rep;
}

/// Large-arboricity variants built on per-layer derandomized coloring.
/// POLY: beta = ceil(alpha^(1+eps)), x = max(2, ceil(alpha^eps)), fresh palette
/// per layer. LINEAR: beta = ceil((2+eps) alpha), x = 2, then recoloring with
/// the smallest free color.
inline ColoringReport color_pipeline_large_alpha(const Graph& g, const ColorConfig& cfg, bool linear) {
    ColoringReport rep;
    rep.pipeline = linear ? ColorPipeline::LargeLinear : ColorPipeline::LargePoly;
    rep.beta = linear ? beta_for_alpha(cfg.alpha, cfg.partition.epsilon)
                      : std::max<std::uint32_t>(1, poly_beta(cfg.alpha, cfg.partition.epsilon));
    rep.partition = detail::full_partition(g, cfg.partition, rep.beta);
    const auto& part = rep.partition->partition;
    rep.phases.push_back({"partition", rep.partition->ledger.rounds});

    const std::uint64_t x =
        linear ? 2
               : std::max<std::uint64_t>(
                     2, static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(cfg.alpha), cfg.partition.epsilon) - 1e-9)));
    Coloring initial;
    initial.color.assign(g.num_nodes(), 0);
    std::uint64_t offset = 0;
    std::uint64_t widest = 1;
    std::uint64_t derand_rounds = 0;
    const auto pieces = detail::layer_pieces(g, part);
    for (const auto& piece : pieces) {
        auto d = derand_color(piece.graph, x, cfg.partition.delta);
        derand_rounds = std::max(derand_rounds, d.rounds_charged);
        for (NodeId i = 0; i < piece.graph.num_nodes(); ++i) {
            initial.color[piece.map.new_to_old[i]] = static_cast<std::uint32_t>((linear ? 0 : offset) + d.coloring.color[i]);
        }
        offset += d.coloring.palette;
        widest = std::max<std::uint64_t>(widest, d.coloring.palette);
    }
    rep.phases.push_back({"derand", derand_rounds});

    if (!linear) {
        initial.palette = static_cast<std::uint32_t>(std::max<std::uint64_t>(1, offset));
        initial.scope = ColoringScope::WholeGraph;
        rep.coloring = std::move(initial);
        rep.palette_bound = static_cast<std::uint64_t>(pieces.size()) * 2 * x * rep.beta;
        rep.palette_bound = std::max<std::uint64_t>(1, rep.palette_bound);
        rep.notes.push_back("x " + std::to_string(x) + ", " + std::to_string(pieces.size()) + " layers");
        return rep;
    }

    initial.palette = static_cast<std::uint32_t>(widest);
    initial.scope = ColoringScope::PerLayer;
    rep.pre_recolor_conflicts = monochromatic_edges(g, initial).size();
    const auto o = orient_by_partition(g, part, IntraRule::LayerThenInitialColor, &initial);
    if (o.max_out_degree() > rep.beta) {
        throw std::logic_error("large-linear: orientation out-degree exceeds beta");
    }
    auto rc = recolor_conflicts(g, part, initial, ColorPick::Smallest);
    rep.coloring = std::move(rc.coloring);
    std::set<std::pair<Layer, std::uint32_t>> classes;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        classes.emplace(part.layer[v], initial.color[v]);
    }
    rep.phases.push_back({"recolor", classes.size()});
    rep.palette_bound = rep.beta + 1;
    return rep;
}

/// Whole-graph derandomized 2 x Delta coloring.
inline ColoringReport color_pipeline_derand(const Graph& g, const ColorConfig& cfg) {
    ColoringReport rep;
    rep.pipeline = ColorPipeline::Derand;
    auto d = derand_color(g, cfg.derand_x, cfg.partition.delta);
    rep.coloring = std::move(d.coloring);
    rep.phases.push_back({"derand", d.rounds_charged});
    rep.palette_bound = rep.coloring.palette;
    rep.notes.push_back("trials " + std::to_string(d.trace.size()));
    return rep;
}

namespace detail {

inline ColoringReport dispatch(const Graph& g, const ColorConfig& cfg, ColorPipeline which) {
    switch (which) {
    case ColorPipeline::P1:
        return color_pipeline_1(g, cfg);
    case ColorPipeline::P2:
        return color_pipeline_2(g, cfg);
    case ColorPipeline::P3:
        return color_pipeline_3(g, cfg);
    case ColorPipeline::LargePoly:
        return color_pipeline_large_alpha(g, cfg, false);
    case ColorPipeline::LargeLinear:
        return color_pipeline_large_alpha(g, cfg, true);
    case ColorPipeline::Derand:
        return color_pipeline_derand(g, cfg);
    }
    throw std::invalid_argument("unknown pipeline");
}

} // namespace detail

/// Runs the selected pipeline. An edgeless graph always ends with the single
/// color 0.
inline ColoringReport run_color_pipeline(const Graph& g, const ColorConfig& cfg, ColorPipeline which) {
    auto rep = detail::dispatch(g, cfg, which);
    if (g.num_edges() == 0 && rep.coloring.palette > 1) {
        std::fill(rep.coloring.color.begin(), rep.coloring.color.end(), 0);
        rep.coloring.palette = 1;
        rep.notes.push_back("edgeless: collapsed to one color");
    }
    return rep;
}

} // namespace arbcolor
