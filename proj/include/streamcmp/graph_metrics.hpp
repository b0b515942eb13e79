#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "streamcmp/louvain.hpp"
#include "streamcmp/network.hpp"
#include "streamcmp/projection.hpp"

namespace streamcmp {

struct NetworkStats {
    bool empty = true;
    std::size_t nodes = 0;
    std::size_t edges = 0;  // distinct directed pairs
    double average_degree = 0.0;  // edges / nodes
    double density = 0.0;         // edges / (n (n - 1))
    double mean_edge_weight = 0.0;
    std::size_t components = 0;
    std::size_t largest_component_size = 0;
    std::size_t largest_component_diameter = 0;
    std::size_t clusters = 0;
    std::size_t largest_cluster_size = 0;
    double reciprocity = 0.0;
    double transitivity = 0.0;
    std::size_t max_k_core = 0;
    double modularity = 0.0;
    std::uint64_t louvain_seed = 0;
};

/// Weakly connected components of the undirected projection. Components
/// are ordered by their smallest member; members are ascending.
std::vector<std::vector<int>> weak_components(const UndirectedGraph& g);
std::vector<std::vector<int>> weak_components(const InteractionNetwork& net);

/// Largest eccentricity over `component` (one weak component of `g`),
/// hop-count on the undirected projection. Singletons give 0.
std::size_t diameter(const std::vector<int>& component, const UndirectedGraph& g);

/// Eccentricity of `source` within its component.
std::size_t eccentricity(int source, const UndirectedGraph& g);

/// Fraction of distinct directed non-loop edges (u,v) whose reverse exists.
double reciprocity(const InteractionNetwork& net);

/// Global clustering on the simple undirected projection:
/// 3 x triangles / connected triples.
double transitivity(const UndirectedGraph& g);
std::size_t triangle_count(const UndirectedGraph& g);

/// Core number of every node (Batagelj-Zaversnik peeling).
std::vector<int> core_numbers(const UndirectedGraph& g);
std::size_t max_k_core(const UndirectedGraph& g);

/// `partition_out`, when given, receives the Louvain partition behind the
/// cluster rows.
NetworkStats network_stats(const InteractionNetwork& net, std::uint64_t louvain_seed,
                           Partition* partition_out = nullptr);

/// Table-5-shaped output: one row per statistic, one column per network.
std::string network_stats_markdown(const std::vector<std::string>& columns, const std::vector<NetworkStats>& stats);
std::string network_stats_csv(const std::vector<std::string>& columns, const std::vector<NetworkStats>& stats);

}  // namespace streamcmp
