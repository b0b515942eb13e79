#include "streamcmp/projection.hpp"

#include <stdexcept>

namespace streamcmp {

namespace {

SparseAdjacency symmetric_from(int n, const std::vector<Eigen::Triplet<double, int>>& half) {
    std::vector<Eigen::Triplet<double, int>> full;
    full.reserve(half.size() * 2);
    for (const auto& t : half) {
        if (t.row() == t.col()) continue;
        full.emplace_back(t.row(), t.col(), t.value());
        full.emplace_back(t.col(), t.row(), t.value());
    }
    SparseAdjacency adj(n, n);
    adj.setFromTriplets(full.begin(), full.end());
    adj.makeCompressed();
    return adj;
}

}  // namespace

UndirectedGraph::UndirectedGraph(SparseAdjacency adjacency) : adj_(std::move(adjacency)) {
    if (adj_.rows() != adj_.cols()) throw std::invalid_argument("UndirectedGraph: adjacency must be square");
    adj_.makeCompressed();
}

UndirectedGraph undirected_projection(const InteractionNetwork& net) {
    std::vector<Eigen::Triplet<double, int>> half;
    half.reserve(net.edge_count());
    for (const auto& e : net.edges())
        half.emplace_back(static_cast<int>(e.source), static_cast<int>(e.target), static_cast<double>(e.weight));
    return UndirectedGraph(symmetric_from(static_cast<int>(net.node_count()), half));
}

UndirectedGraph make_undirected(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<Eigen::Triplet<double, int>> half;
    half.reserve(edges.size());
    for (auto [u, v] : edges) half.emplace_back(u, v, 1.0);
    return UndirectedGraph(symmetric_from(n, half));
}

DirectedGraph::DirectedGraph(const InteractionNetwork& net) : n_(static_cast<int>(net.node_count())) {
    out_off_.assign(n_ + 1, 0);
    in_off_.assign(n_ + 1, 0);
    for (const auto& e : net.edges()) {
        if (e.source == e.target) continue;
        ++out_off_[e.source + 1];
        ++in_off_[e.target + 1];
    }
    for (int v = 0; v < n_; ++v) {
        out_off_[v + 1] += out_off_[v];
        in_off_[v + 1] += in_off_[v];
    }
    out_adj_.resize(out_off_[n_]);
    in_adj_.resize(in_off_[n_]);
    auto out_fill = out_off_;
    auto in_fill = in_off_;
    // Edges arrive sorted by (source, target), so out rows come out sorted;
    // in rows are filled in source order and are sorted as well.
    for (const auto& e : net.edges()) {
        if (e.source == e.target) continue;
        out_adj_[out_fill[e.source]++] = static_cast<int>(e.target);
        in_adj_[in_fill[e.target]++] = static_cast<int>(e.source);
    }
}

}  // namespace streamcmp
