#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "streamcmp/network.hpp"

namespace streamcmp {

using SparseAdjacency = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

/// Simple undirected graph in compressed row form. Row v lists the sorted
/// neighbors of v; values are the interaction weights summed over both
/// directions. No self-loops.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(SparseAdjacency adjacency);

    int size() const { return static_cast<int>(adj_.rows()); }
    std::size_t edge_count() const { return static_cast<std::size_t>(adj_.nonZeros()) / 2; }
    int degree(int v) const { return adj_.outerIndexPtr()[v + 1] - adj_.outerIndexPtr()[v]; }

    std::span<const int> neighbors(int v) const {
        const int* p = adj_.innerIndexPtr();
        return {p + adj_.outerIndexPtr()[v], p + adj_.outerIndexPtr()[v + 1]};
    }
    std::span<const double> weights(int v) const {
        const double* p = adj_.valuePtr();
        return {p + adj_.outerIndexPtr()[v], p + adj_.outerIndexPtr()[v + 1]};
    }

    const SparseAdjacency& adjacency() const { return adj_; }

private:
    SparseAdjacency adj_;
};

/// Drops direction and self-loops.
UndirectedGraph undirected_projection(const InteractionNetwork& net);

/// Builds from an explicit edge list (weights 1, duplicates summed); used by
/// tests and generators.
UndirectedGraph make_undirected(int n, const std::vector<std::pair<int, int>>& edges);

/// Unweighted directed adjacency without self-loops, in both orientations.
class DirectedGraph {
public:
    explicit DirectedGraph(const InteractionNetwork& net);

    int size() const { return n_; }
    std::span<const int> out(int v) const { return {out_adj_.data() + out_off_[v], out_adj_.data() + out_off_[v + 1]}; }
    std::span<const int> in(int v) const { return {in_adj_.data() + in_off_[v], in_adj_.data() + in_off_[v + 1]}; }

private:
    int n_ = 0;
    std::vector<int> out_off_, out_adj_, in_off_, in_adj_;
};

}  // namespace streamcmp
