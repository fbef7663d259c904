#include "test_util.hpp"

#include "arbcolor/report.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace arbcolor;
using namespace testutil;

namespace {

PipelineConfig config(std::uint32_t beta, std::optional<std::uint64_t> x = std::nullopt) {
    PipelineConfig cfg;
    cfg.beta = beta;
    cfg.x_override = x;
    return cfg;
}

} // namespace

TEST(PipelineConfig, Validation) {
    PipelineConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.delta = 1.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.delta = 0.5;
    cfg.c = 6.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.c = 7.0;
    cfg.epsilon = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.epsilon = 1.0;
    cfg.x_override = 1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(PipelineConfig, DerivedQuantities) {
    PipelineConfig cfg;
    EXPECT_EQ(cfg.x_for(1u << 14), 2u);
    cfg.x_override = 9;
    EXPECT_EQ(cfg.x_for(5), 9u);
    EXPECT_EQ(cfg.space_budget(1u << 10), 32u);
    EXPECT_EQ(beta_for_alpha(2, 1.0), 6u);
    EXPECT_EQ(beta_for_alpha(3, 0.5), 8u);
    EXPECT_THROW(round_budget(2, 4, cfg), std::invalid_argument);
}

TEST(PeelPipeline, StarTwoRounds) {
    auto r = peel_pipeline(star(5), 2);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.ledger.rounds, 2u);
    EXPECT_EQ(r.partition.layer[0], Layer{1});
    EXPECT_EQ(r.partition.layer[3], Layer{0});
    EXPECT_EQ(r.mode, PipelineMode::Peel);
}

TEST(PeelPipeline, EqualsNaturalPartition) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint32_t alpha = 1 + rng() % 4;
        auto [g, cert] = generate_forest_union(50 + rng() % 500, alpha, rng());
        const std::uint32_t beta = 2 * alpha + rng() % (2 * alpha + 1);
        auto r = peel_pipeline(g, beta);
        ASSERT_TRUE(r.ok());
        EXPECT_EQ(r.partition, natural_partition(g, beta));
    }
}

TEST(PeelPipeline, StallsOnCompleteGraph) {
    auto r = peel_pipeline(complete(4), 2);
    EXPECT_EQ(r.status, PipelineStatus::FailedToProgress);
    EXPECT_NE(r.diagnostics.find("minimum degree 3"), std::string::npos);
}

TEST(PartitionPipeline, ForestWithBetaThree) {
    auto [g, cert] = generate_forest_union(1000, 1, 12);
    auto r = partition_pipeline(g, config(3, 8));
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.mode, PipelineMode::LcaPipeline);
    EXPECT_TRUE(r.partition.is_full());
    EXPECT_TRUE(validate_partition(g, r.partition).valid());
    EXPECT_EQ(r.x, 8u);
}

TEST(PartitionPipeline, CompleteGraphFails) {
    auto r = partition_pipeline(complete(4), config(2, 4));
    EXPECT_EQ(r.status, PipelineStatus::FailedToProgress);
    EXPECT_EQ(r.mode, PipelineMode::Hybrid);
}

TEST(PartitionPipeline, EdgelessSingleLayer) {
    auto g = Graph::from_edges(10, {});
    auto r = partition_pipeline(g, config(1));
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.partition.size(), 1u);
}

TEST(PartitionPipeline, LayersAppendAcrossRounds) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto [g, cert] = generate_forest_union(400, 3, seed);
        auto r = partition_pipeline(g, config(7, 2));
        ASSERT_TRUE(r.ok());
        EXPECT_TRUE(validate_partition(g, r.partition).valid());
        EXPECT_TRUE(r.partition.is_full());
        EXPECT_TRUE(std::is_sorted(r.per_round_layer_offsets.begin(), r.per_round_layer_offsets.end()));
        EXPECT_EQ(r.per_round_layer_offsets.size(), r.ledger.rounds);
        for (std::size_t i = 1; i < r.ledger.per_round.size(); ++i) {
            EXPECT_LT(r.ledger.per_round[i].nodes_remaining, r.ledger.per_round[i - 1].nodes_remaining);
        }
    }
}

TEST(PartitionPipeline, FirstRoundNeverBelowNaturalLayer) {
    auto [g, cert] = generate_forest_union(300, 2, 8);
    auto r = partition_pipeline(g, config(6, 16));
    auto nat = natural_partition(g, 6);
    ASSERT_TRUE(r.ok());
    const std::uint32_t next = r.per_round_layer_offsets.size() > 1 ? r.per_round_layer_offsets[1] : UINT32_MAX;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (r.partition.layer[v].value() < next) {
            EXPECT_GE(r.partition.layer[v], nat.layer[v]);
        }
    }
}

TEST(Guess, ForestSucceedsAtFirstGuess) {
    auto [g, cert] = generate_forest_union(500, 1, 2);
    PipelineConfig cfg;
    auto r = guess_arboricity_pipeline(g, cfg, 1.0);
    ASSERT_TRUE(r.result.ok());
    EXPECT_EQ(r.phase1_estimate, 2u);
    EXPECT_LE(r.alpha_estimate, 4u);
    EXPECT_EQ(r.result.partition.beta, beta_for_alpha(r.alpha_estimate, 1.0));
    EXPECT_TRUE(validate_partition(g, r.result.partition).valid());
    EXPECT_GE(r.charged_rounds, r.result.ledger.rounds);
}

TEST(Shrink, VacuousWhenFactorAtLeastOne) {
    auto [g, cert] = generate_forest_union(200, 1, 1);
    PipelineConfig cfg = config(3, 2);
    auto rep = shrink_report(g, cfg, 1);
    EXPECT_GE(rep.factor, 1.0);
    EXPECT_TRUE(rep.vacuous);
    EXPECT_EQ(rep.flagged, 0u);
    EXPECT_GE(rep.rows.front().cap, 200.0);
}

TEST(Report, KeysAndValidity) {
    auto [g, cert] = generate_forest_union(100, 1, 1);
    PipelineConfig cfg = config(3, 4);
    auto r = partition_pipeline(g, cfg);
    auto j = pipeline_report(g, cfg, r);
    EXPECT_EQ(j["mode"], "LCA_PIPELINE");
    EXPECT_EQ(j["status"], "OK");
    EXPECT_TRUE(j["valid"].get<bool>());
    EXPECT_EQ(j["per_round"].size(), r.ledger.rounds);
    EXPECT_EQ(j.begin().key(), "n");
    EXPECT_FALSE(j.contains("diagnostics"));
}
