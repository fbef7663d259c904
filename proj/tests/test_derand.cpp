#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace arbcolor;
using namespace testutil;

namespace {

ConflictEdges all_open(const Graph& g) {
    ConflictEdges e;
    for (const auto& edge : g.edges()) {
        e.open.emplace_back(edge.u, edge.v);
    }
    return e;
}

} // namespace

TEST(HashFamily, Parameters) {
    auto h = make_hash_family(10, 2, 1);
    EXPECT_EQ(h.K, 4u);
    EXPECT_EQ(h.p, 17u);
    EXPECT_EQ(h.bits_per_half, 5u);
    EXPECT_EQ(h.seed_bits(), 10u);
    EXPECT_EQ(make_hash_family(5, 2, 0).K, 1u);
}

TEST(SeedBox, PrefixesCoverSeedSpace) {
    auto h = make_hash_family(10, 2, 1);
    EXPECT_EQ(seed_box(h, 0, 0).size(), h.p * h.p);
    std::uint64_t total = 0;
    for (std::uint64_t prefix = 0; prefix < 8; ++prefix) {
        total += seed_box(h, prefix, 3).size();
    }
    EXPECT_EQ(total, h.p * h.p);
    total = 0;
    for (std::uint64_t prefix = 0; prefix < 128; ++prefix) {
        total += seed_box(h, prefix, 7).size();
    }
    EXPECT_EQ(total, h.p * h.p);
}

TEST(ConditionalExpectation, MatchesEnumeration) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const NodeId n = 4 + rng() % 10;
        auto g = oracle::random_graph(n, 0.3, rng());
        auto h = make_hash_family(n, 2, g.max_degree());
        ConflictEdges edges = all_open(g);
        if (!edges.open.empty() && rng() % 2 == 0) {
            // Pretend the first edge's upper endpoint is already colored.
            auto [u, v] = edges.open.front();
            edges.open.erase(edges.open.begin());
            edges.to_colored.emplace_back(u, rng() % h.K);
        }
        for (std::uint32_t len : {0u, 1u, 3u, h.bits_per_half, h.bits_per_half + 2, h.seed_bits()}) {
            const std::uint64_t prefix = len == 0 ? 0 : rng() % (std::uint64_t{1} << len);
            auto box = seed_box(h, prefix, len);
            if (box.empty()) {
                continue;
            }
            EXPECT_EQ(conditional_expectation(h, edges, box), oracle::expectation_by_enumeration(h, edges, prefix, len))
                << "trial " << trial << " len " << len;
        }
    }
}

TEST(Derand, SingleEdge) {
    auto g = Graph::from_edges(2, {{0, 1}});
    auto r = derand_color(g, 2, 0.5);
    EXPECT_EQ(r.coloring.palette, 4u);
    EXPECT_EQ(r.trace.size(), 1u);
    EXPECT_TRUE(is_proper(g, r.coloring));
    EXPECT_EQ(r.trace[0].monochromatic, 0u);
}

TEST(Derand, RejectsBadParameters) {
    auto g = path(3);
    EXPECT_THROW(derand_color(g, 1, 0.5), std::invalid_argument);
    EXPECT_THROW(derand_color(g, 2, 1.0), std::invalid_argument);
}

TEST(Derand, ExpectationsNeverIncrease) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto [g, cert] = generate_forest_union(40, 1 + seed % 3, seed);
        auto r = derand_color(g, 2, 0.5);
        EXPECT_TRUE(is_proper(g, r.coloring));
        EXPECT_EQ(r.coloring.palette, 4 * g.max_degree());
        for (const auto& it : r.trace) {
            for (std::size_t i = 1; i < it.expectations.size(); ++i) {
                EXPECT_LE(it.expectations[i], it.expectations[i - 1]);
            }
            EXPECT_LE(mpq_class(static_cast<unsigned long>(it.monochromatic)), it.expectations.back());
            EXPECT_EQ(mpq_class(static_cast<unsigned long>(it.monochromatic)), it.expectations.back());
        }
    }
}

TEST(Derand, BatchSize) {
    EXPECT_EQ(derand_batch_size(1, 0.5), 1u);
    EXPECT_EQ(derand_batch_size(1u << 12, 0.5), 2u);
    EXPECT_EQ(derand_batch_size(1u << 12, 0.75), 3u);
}
