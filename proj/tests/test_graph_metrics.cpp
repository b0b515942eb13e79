#include <gtest/gtest.h>

#include "oracles.hpp"
#include "streamcmp/graph_metrics.hpp"

using namespace streamcmp;
using oracle::EdgeList;

namespace {

InteractionNetwork net_of(const std::vector<std::pair<std::string, std::string>>& edges) {
    NetworkBuilder b(NetworkKind::mention, "t");
    for (const auto& [u, v] : edges) b.add_interaction(u, v);
    return b.build();
}

// Largest k for which some non-empty node subset has minimum internal
// degree >= k, by trying every subset.
int exhaustive_max_core(const EdgeList& g) {
    const auto a = oracle::adjacency(g, true);
    int best = 0;
    for (unsigned mask = 1; mask < (1u << g.n); ++mask) {
        int min_deg = g.n;
        for (int v = 0; v < g.n; ++v) {
            if (!(mask >> v & 1u)) continue;
            int d = 0;
            for (int u = 0; u < g.n; ++u) d += (mask >> u & 1u) && a[v][u];
            min_deg = std::min(min_deg, d);
        }
        best = std::max(best, min_deg);
    }
    return best;
}

EdgeList path(int n) {
    EdgeList g{n, {}};
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    return g;
}

EdgeList complete(int n) {
    EdgeList g{n, {}};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    return g;
}

}  // namespace

TEST(NetworkStats, DirectedThreeCycle) {
    auto s = network_stats(net_of({{"A", "B"}, {"B", "C"}, {"C", "A"}}), 1);
    EXPECT_EQ(s.nodes, 3u);
    EXPECT_EQ(s.edges, 3u);
    EXPECT_DOUBLE_EQ(s.average_degree, 1.0);
    EXPECT_DOUBLE_EQ(s.density, 0.5);
    EXPECT_DOUBLE_EQ(s.reciprocity, 0.0);
    EXPECT_EQ(s.components, 1u);
    EXPECT_EQ(s.largest_component_size, 3u);
    EXPECT_EQ(s.largest_component_diameter, 1u);
    EXPECT_DOUBLE_EQ(s.transitivity, 1.0);
    EXPECT_EQ(s.max_k_core, 2u);
    EXPECT_FALSE(s.empty);
}

TEST(NetworkStats, MutualPair) {
    auto s = network_stats(net_of({{"A", "B"}, {"B", "A"}}), 1);
    EXPECT_DOUBLE_EQ(s.reciprocity, 1.0);
    EXPECT_DOUBLE_EQ(s.transitivity, 0.0);
    EXPECT_DOUBLE_EQ(s.density, 1.0);
}

TEST(NetworkStats, DegreeAndDensityPinning) {
    auto s = network_stats(build_retweet_network(oracle::retweet_network_fixture(3234, 7855)), 42);
    EXPECT_EQ(s.nodes, 3234u);
    EXPECT_EQ(s.edges, 7855u);
    EXPECT_EQ(fmt::format("{:.3f}", s.average_degree), "2.429");
    EXPECT_EQ(fmt::format("{:.3f}", s.density), "0.001");
    EXPECT_DOUBLE_EQ(s.average_degree * static_cast<double>(s.nodes), 7855.0);
    auto t = network_stats(build_retweet_network(oracle::retweet_network_fixture(4426, 12327)), 42);
    EXPECT_EQ(fmt::format("{:.3f}", t.average_degree), "2.785");
    auto md = network_stats_markdown({"RAPID"}, {s});
    EXPECT_NE(md.find("| Average degree | 2.429 |"), std::string::npos);
    EXPECT_NE(md.find("| Density | 0.001 |"), std::string::npos);
}

TEST(NetworkStats, EmptyNetwork) {
    auto s = network_stats(InteractionNetwork{}, 1);
    EXPECT_TRUE(s.empty);
    EXPECT_EQ(s.nodes, 0u);
    EXPECT_EQ(s.average_degree, 0.0);
    EXPECT_EQ(s.density, 0.0);
    EXPECT_EQ(s.clusters, 0u);
    EXPECT_NE(network_stats_csv({"x"}, {s}).find("Status,empty"), std::string::npos);
}

TEST(NetworkStats, MeanEdgeWeightAndPartitionOut) {
    NetworkBuilder b(NetworkKind::reply, "t");
    b.add_interaction("a", "b", 3);
    b.add_interaction("b", "c", 1);
    b.add_node("z");
    auto net = b.build();
    Partition p;
    auto s = network_stats(net, 5, &p);
    EXPECT_DOUBLE_EQ(s.mean_edge_weight, 2.0);
    EXPECT_EQ(s.components, 2u);
    EXPECT_EQ(p.nodes, net.nodes());
    EXPECT_EQ(p.cluster.size(), 4u);
    EXPECT_EQ(s.clusters, static_cast<std::size_t>(p.cluster_count()));
    EXPECT_EQ(s.louvain_seed, 5u);
}

TEST(Components, TwoSeparatePairs) {
    auto comps = weak_components(net_of({{"A", "B"}, {"C", "D"}}));
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0], (std::vector<int>{0, 1}));
    EXPECT_EQ(comps[1], (std::vector<int>{2, 3}));
    EXPECT_TRUE(weak_components(InteractionNetwork{}).empty());
}

TEST(Diameter, PathAndStar) {
    auto p4 = oracle::to_network(path(4));
    EXPECT_EQ(network_stats(p4, 1).largest_component_diameter, 3u);
    EdgeList star{6, {}};
    for (int i = 1; i <= 5; ++i) star.edges.emplace_back(0, i);
    EXPECT_EQ(network_stats(oracle::to_network(star), 1).largest_component_diameter, 2u);
    auto g = undirected_projection(oracle::to_network(EdgeList{1, {}}));
    EXPECT_EQ(diameter({0}, g), 0u);
}

TEST(Reciprocity, Examples) {
    EXPECT_DOUBLE_EQ(reciprocity(net_of({{"A", "B"}})), 0.0);
    EXPECT_DOUBLE_EQ(reciprocity(net_of({{"A", "B"}, {"B", "A"}, {"A", "C"}})), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(reciprocity(InteractionNetwork{}), 0.0);
}

TEST(Transitivity, TriangleAndPath) {
    EXPECT_DOUBLE_EQ(transitivity(undirected_projection(net_of({{"A", "B"}, {"B", "C"}, {"C", "A"}}))), 1.0);
    EXPECT_DOUBLE_EQ(transitivity(undirected_projection(net_of({{"A", "B"}, {"B", "C"}}))), 0.0);
}

TEST(KCore, Examples) {
    EdgeList tri_pendant{4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}};
    EXPECT_EQ(exhaustive_max_core(tri_pendant), 2);
    EXPECT_EQ(max_k_core(undirected_projection(oracle::to_network(tri_pendant))), 2u);
    EdgeList tree{7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}}};
    EXPECT_EQ(max_k_core(undirected_projection(oracle::to_network(tree))), 1u);
    EXPECT_EQ(max_k_core(undirected_projection(oracle::to_network(complete(5)))), 4u);
    EXPECT_EQ(max_k_core(UndirectedGraph{}), 0u);
}

TEST(KCore, MatchesExhaustiveSubsetSearchOnSmallGraphs) {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(10));
        auto g = oracle::random_undirected(rng, n, 0.2 + 0.6 * rng.uniform());
        EXPECT_EQ(max_k_core(undirected_projection(oracle::to_network(g))),
                  static_cast<std::size_t>(exhaustive_max_core(g)));
    }
}

// 100 random directed graphs, n <= 60, every structural statistic against
// its brute-force oracle.
TEST(GraphOracles, RandomGraphsMatchBruteForce) {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(60));
        const double p = rng.uniform() * 3.0 / std::max(n, 1);
        const EdgeList g = oracle::random_directed(rng, n, p);
        const auto net = oracle::to_network(g);
        const auto ug = undirected_projection(net);

        const auto comps = weak_components(ug);
        EXPECT_EQ(comps, oracle::reachability_components(g)) << "trial " << trial;

        const auto d = oracle::floyd_warshall(g, true);
        for (const auto& c : comps) EXPECT_EQ(diameter(c, ug), oracle::component_diameter(d, c));

        const auto t = oracle::enumerate_triples(g);
        EXPECT_EQ(triangle_count(ug), t.triangles);
        const double expected_t = t.connected_triples == 0 ? 0.0 : 3.0 * t.triangles / t.connected_triples;
        EXPECT_DOUBLE_EQ(transitivity(ug), expected_t);

        const auto cores = core_numbers(ug);
        const auto naive = oracle::peeling_core_numbers(g);
        EXPECT_EQ(cores, naive);

        // Every node of the max core has at least k neighbors inside it.
        const std::size_t k = max_k_core(ug);
        EXPECT_EQ(k, n == 0 ? 0u : static_cast<std::size_t>(*std::max_element(naive.begin(), naive.end())));
        for (int v = 0; v < n; ++v) {
            if (static_cast<std::size_t>(cores[v]) < k) continue;
            std::size_t inside = 0;
            for (int u : ug.neighbors(v)) inside += static_cast<std::size_t>(cores[u]) >= k;
            EXPECT_GE(inside, k);
        }

        auto s = network_stats(net, 7);
        std::size_t total = 0;
        for (const auto& c : comps) total += c.size();
        EXPECT_EQ(total, s.nodes);
        EXPECT_LE(s.largest_component_size, s.nodes);
        EXPECT_LT(s.largest_component_diameter, std::max<std::size_t>(s.largest_component_size, 1));
        EXPECT_GE(s.density, 0.0);
        EXPECT_LE(s.density, 1.0);
        EXPECT_GE(s.reciprocity, 0.0);
        EXPECT_LE(s.reciprocity, 1.0);
    }
}

TEST(GraphOracles, EccentricityOfSourceWithinComponent) {
    Rng rng(3);
    auto g = oracle::random_undirected(rng, 30, 0.1);
    auto ug = undirected_projection(oracle::to_network(g));
    const auto d = oracle::floyd_warshall(g, true);
    for (int v = 0; v < 30; ++v) {
        int e = 0;
        for (int u = 0; u < 30; ++u)
            if (d[v][u] < oracle::kInf) e = std::max(e, d[v][u]);
        EXPECT_EQ(eccentricity(v, ug), static_cast<std::size_t>(e));
    }
}

TEST(Projection, WeightsSumAcrossDirections) {
    NetworkBuilder b(NetworkKind::mention, "t", true);
    b.add_interaction("a", "b", 2);
    b.add_interaction("b", "a", 3);
    b.add_interaction("a", "a", 4);
    auto ug = undirected_projection(b.build());
    EXPECT_EQ(ug.size(), 2);
    EXPECT_EQ(ug.edge_count(), 1u);
    ASSERT_EQ(ug.weights(0).size(), 1u);
    EXPECT_DOUBLE_EQ(ug.weights(0)[0], 5.0);
}
