#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "streamcmp/louvain.hpp"

namespace streamcmp {

/// Pair agreement score restricted to the nodes both partitions share.
/// `value` is empty when the score is undefined.
struct PairScore {
    std::optional<double> value;
    std::size_t common_nodes = 0;
};

/// Contingency table of two labelings over the same items, stored sparsely.
struct Contingency {
    struct Cell {
        int row = 0;
        int col = 0;
        std::size_t count = 0;
    };
    std::vector<Cell> cells;  // non-zero cells, sorted by (row, col)
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
    std::size_t n = 0;
};

Contingency contingency(const std::vector<int>& p, const std::vector<int>& q);

/// Rand and adjusted Rand index of two labelings of the same items.
std::optional<double> rand_index(const std::vector<int>& p, const std::vector<int>& q);
std::optional<double> adjusted_rand_index(const std::vector<int>& p, const std::vector<int>& q);

/// Restricts both partitions to their common node ids, in sorted id order.
std::pair<std::vector<int>, std::vector<int>> restrict_to_common(const Partition& p, const Partition& q);

PairScore rand_index(const Partition& p, const Partition& q);
PairScore adjusted_rand_index(const Partition& p, const Partition& q);

/// Descending cluster sizes, at most `limit` of them.
std::vector<std::size_t> top_cluster_sizes(const Partition& p, std::size_t limit = 20);

struct PartitionComparison {
    std::size_t common_node_count = 0;
    std::optional<double> rand_index;
    std::optional<double> ari;
    std::vector<std::size_t> top_sizes_a;
    std::vector<std::size_t> top_sizes_b;
};

PartitionComparison compare_partitions(const Partition& a, const Partition& b, std::size_t size_limit = 20);

}  // namespace streamcmp
