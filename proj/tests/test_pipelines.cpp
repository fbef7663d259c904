#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace arbcolor;
using namespace testutil;

namespace {

ColorConfig color_config(std::uint32_t alpha) {
    ColorConfig cfg;
    cfg.alpha = alpha;
    cfg.partition.epsilon = 1.0;
    return cfg;
}

std::size_t distinct_colors(const Coloring& c) {
    return std::set<std::uint32_t>(c.color.begin(), c.color.end()).size();
}

constexpr ColorPipeline kAll[] = {ColorPipeline::P1,        ColorPipeline::P2,          ColorPipeline::P3,
                                  ColorPipeline::LargePoly, ColorPipeline::LargeLinear, ColorPipeline::Derand};

} // namespace

TEST(Pipelines, NamesRoundTrip) {
    for (auto p : kAll) {
        EXPECT_EQ(parse_color_pipeline(to_string(p)), p);
    }
    EXPECT_FALSE(parse_color_pipeline("p4").has_value());
}

TEST(Pipelines, P3ForestAtMostFourColors) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto [g, cert] = generate_forest_union(400, 1, seed);
        auto rep = color_pipeline_3(g, color_config(1));
        EXPECT_TRUE(is_proper(g, rep.coloring));
        EXPECT_LE(rep.coloring.palette, 4u);
        EXPECT_EQ(rep.palette_bound, 4u);
    }
}

TEST(Pipelines, P3StarAndSingleEdge) {
    auto g = star(6);
    auto rep = color_pipeline_3(g, color_config(1));
    EXPECT_TRUE(is_proper(g, rep.coloring));
    EXPECT_LE(rep.coloring.palette, 4u);
    auto edge = Graph::from_edges(2, {{0, 1}});
    rep = color_pipeline_3(edge, color_config(1));
    EXPECT_TRUE(is_proper(edge, rep.coloring));
    EXPECT_EQ(distinct_colors(rep.coloring), 2u);
}

TEST(Pipelines, LargeLinearPaletteBetaPlusOne) {
    auto [g, cert] = generate_forest_union(300, 3, 5);
    auto rep = color_pipeline_large_alpha(g, color_config(3), true);
    EXPECT_TRUE(is_proper(g, rep.coloring));
    EXPECT_EQ(rep.palette_bound, 10u);
    EXPECT_LE(rep.coloring.palette, 10u);
}

TEST(Pipelines, LargePolyFreshPalettesPerLayer) {
    auto [g, cert] = generate_forest_union(300, 2, 6);
    auto rep = color_pipeline_large_alpha(g, color_config(2), false);
    EXPECT_TRUE(is_proper(g, rep.coloring));
    EXPECT_LE(rep.coloring.palette, rep.palette_bound);
    const auto& part = rep.partition->partition;
    for (const auto& e : g.edges()) {
        if (part.layer[e.u] != part.layer[e.v]) {
            EXPECT_NE(rep.coloring.color[e.u], rep.coloring.color[e.v]);
        }
    }
    auto empty = Graph::from_edges(6, {});
    EXPECT_EQ(color_pipeline_large_alpha(empty, color_config(1), false).coloring.palette, 1u);
}

TEST(Pipelines, LinialPipelinesWithinRecipeBound) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const std::uint32_t alpha = 1 + seed;
        auto [g, cert] = generate_forest_union(500, alpha, seed);
        for (auto p : {ColorPipeline::P1, ColorPipeline::P2}) {
            auto rep = run_color_pipeline(g, color_config(alpha), p);
            EXPECT_TRUE(is_proper(g, rep.coloring));
            EXPECT_LE(rep.coloring.palette, rep.palette_bound);
        }
    }
}

TEST(Pipelines, RecipeBoundMonotoneInBeta) {
    for (std::uint64_t m : {64u, 500u, 5000u, 100000u}) {
        std::uint64_t prev = 0;
        for (std::uint32_t beta = 1; beta <= 40; ++beta) {
            const auto b = linial_recipe_bound(m, beta, 0xFFFFFFFFu);
            EXPECT_GE(b, prev);
            prev = b;
        }
    }
}

TEST(Pipelines, SingleNodeAndEdgeless) {
    auto one = Graph::from_edges(1, {});
    auto none = Graph::from_edges(7, {});
    for (auto p : kAll) {
        for (const auto* g : {&one, &none}) {
            auto rep = run_color_pipeline(*g, color_config(1), p);
            EXPECT_TRUE(is_proper(*g, rep.coloring)) << to_string(p);
            EXPECT_EQ(rep.coloring.palette, 1u) << to_string(p);
            EXPECT_LE(rep.coloring.palette, rep.palette_bound) << to_string(p);
        }
    }
}

TEST(Pipelines, DerandSingleEdgePaletteFour) {
    auto g = Graph::from_edges(2, {{0, 1}});
    auto rep = color_pipeline_derand(g, color_config(1));
    EXPECT_EQ(rep.coloring.palette, 4u);
    EXPECT_TRUE(is_proper(g, rep.coloring));
}

TEST(Pipelines, PartitionFailureSurfaces) {
    auto g = complete(6);
    ColorConfig cfg = color_config(1);
    EXPECT_THROW(color_pipeline_3(g, cfg), PipelineFailure);
}

TEST(Pipelines, PhasesChargeRounds) {
    auto [g, cert] = generate_forest_union(300, 2, 2);
    for (auto p : kAll) {
        auto rep = run_color_pipeline(g, color_config(2), p);
        EXPECT_FALSE(rep.phases.empty());
        EXPECT_GT(rep.rounds_charged(), 0u) << to_string(p);
    }
}
