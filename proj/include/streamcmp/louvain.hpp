#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamcmp/network.hpp"
#include "streamcmp/projection.hpp"

namespace streamcmp {

/// Cluster assignment for the nodes of one network. `cluster[i]` belongs to
/// `nodes[i]`; ids are dense from 0 in order of first appearance.
struct Partition {
    std::vector<std::string> nodes;
    std::vector<int> cluster;
    double modularity = 0.0;
    std::uint64_t seed = 0;
    // Modularity after every local-moving pass, across all levels.
    std::vector<double> modularity_trace;

    std::size_t size() const { return cluster.size(); }
    int cluster_count() const;
    std::optional<int> cluster_of(std::string_view node) const;
};

/// Newman-Girvan modularity of `membership` on the weighted graph.
double modularity(const UndirectedGraph& g, const std::vector<int>& membership, double resolution = 1.0);

/// Two-phase Louvain on the undirected weighted projection. Node visit order
/// is reshuffled every pass from `seed`; results are deterministic for a
/// fixed (graph, seed).
Partition louvain(const UndirectedGraph& g, std::uint64_t seed, double resolution = 1.0);
Partition louvain(const InteractionNetwork& net, std::uint64_t seed, double resolution = 1.0);

/// Builds a Partition from explicit labels (relabels densely).
Partition make_partition(std::vector<std::string> nodes, const std::vector<int>& labels);

void write_partition_csv(std::ostream& out, const Partition& p);

}  // namespace streamcmp
