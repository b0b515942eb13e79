#include "streamcmp/louvain.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "streamcmp/rng.hpp"
#include "streamcmp/table.hpp"

namespace streamcmp {

namespace {

constexpr double kMinGain = 1e-12;

// Weighted graph of one Louvain level. Self-loop weight of a node is the
// full internal weight of the community it stands for, i.e. the sum of
// A_ij over ordered pairs inside it.
struct LevelGraph {
    int n = 0;
    std::vector<int> offset;
    std::vector<int> target;
    std::vector<double> weight;
    std::vector<double> self;
    std::vector<double> degree;
    double total = 0.0;  // sum of degrees (2m)
};

LevelGraph from_projection(const UndirectedGraph& g) {
    LevelGraph lg;
    lg.n = g.size();
    const auto& adj = g.adjacency();
    lg.offset.assign(adj.outerIndexPtr(), adj.outerIndexPtr() + lg.n + 1);
    lg.target.assign(adj.innerIndexPtr(), adj.innerIndexPtr() + adj.nonZeros());
    lg.weight.assign(adj.valuePtr(), adj.valuePtr() + adj.nonZeros());
    lg.self.assign(lg.n, 0.0);
    lg.degree.assign(lg.n, 0.0);
    for (int v = 0; v < lg.n; ++v) {
        for (int e = lg.offset[v]; e < lg.offset[v + 1]; ++e) lg.degree[v] += lg.weight[e];
        lg.total += lg.degree[v];
    }
    return lg;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& community, int count) {
    LevelGraph out;
    out.n = count;
    out.self.assign(count, 0.0);
    out.degree.assign(count, 0.0);
    out.total = g.total;
    std::vector<std::vector<int>> members(count);
    for (int v = 0; v < g.n; ++v) members[community[v]].push_back(v);

    std::vector<double> acc(count, 0.0);
    std::vector<int> touched;
    out.offset.push_back(0);
    for (int c = 0; c < count; ++c) {
        for (int v : members[c]) {
            out.self[c] += g.self[v];
            out.degree[c] += g.degree[v];
            for (int e = g.offset[v]; e < g.offset[v + 1]; ++e) {
                int d = community[g.target[e]];
                if (d == c) {
                    out.self[c] += g.weight[e];
                    continue;
                }
                if (acc[d] == 0.0) touched.push_back(d);
                acc[d] += g.weight[e];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int d : touched) {
            out.target.push_back(d);
            out.weight.push_back(acc[d]);
            acc[d] = 0.0;
        }
        touched.clear();
        out.offset.push_back(static_cast<int>(out.target.size()));
    }
    return out;
}

double level_modularity(const std::vector<double>& internal, const std::vector<double>& tot, double total,
                        double resolution) {
    if (total <= 0.0) return 0.0;
    double q = 0.0;
    for (std::size_t c = 0; c < tot.size(); ++c) {
        double t = tot[c] / total;
        q += internal[c] / total - resolution * t * t;
    }
    return q;
}

struct LocalMoveResult {
    std::vector<int> community;  // dense labels
    int count = 0;
    bool moved = false;
};

LocalMoveResult local_moves(const LevelGraph& g, Rng& rng, double resolution, std::vector<double>& trace) {
    std::vector<int> community(g.n);
    std::iota(community.begin(), community.end(), 0);
    std::vector<double> tot = g.degree;
    std::vector<double> internal = g.self;
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> link(g.n, 0.0);
    std::vector<char> seen(g.n, 0);
    std::vector<int> candidates;
    bool any_move = false;

    while (true) {
        rng.shuffle(std::span<int>(order));
        std::size_t moves = 0;
        for (int v : order) {
            const int own = community[v];
            const double kv = g.degree[v];
            candidates.clear();
            candidates.push_back(own);
            seen[own] = 1;
            for (int e = g.offset[v]; e < g.offset[v + 1]; ++e) {
                int c = community[g.target[e]];
                if (!seen[c]) {
                    seen[c] = 1;
                    candidates.push_back(c);
                }
                link[c] += g.weight[e];
            }
            tot[own] -= kv;
            internal[own] -= 2.0 * link[own] + g.self[v];

            int best = own;
            double best_gain = link[own] - resolution * tot[own] * kv / g.total;
            for (int c : candidates) {
                if (c == own) continue;
                double gain = link[c] - resolution * tot[c] * kv / g.total;
                if (gain > best_gain + kMinGain) {
                    best_gain = gain;
                    best = c;
                }
            }
            tot[best] += kv;
            internal[best] += 2.0 * link[best] + g.self[v];
            community[v] = best;
            if (best != own) ++moves;
            for (int c : candidates) {
                link[c] = 0.0;
                seen[c] = 0;
            }
        }
        // Recomputed from scratch so the trace carries no incremental drift.
        std::fill(internal.begin(), internal.end(), 0.0);
        std::fill(tot.begin(), tot.end(), 0.0);
        for (int u = 0; u < g.n; ++u) {
            tot[community[u]] += g.degree[u];
            internal[community[u]] += g.self[u];
            for (int e = g.offset[u]; e < g.offset[u + 1]; ++e)
                if (community[g.target[e]] == community[u]) internal[community[u]] += g.weight[e];
        }
        trace.push_back(level_modularity(internal, tot, g.total, resolution));
        if (moves == 0) break;
        any_move = true;
    }

    LocalMoveResult res;
    res.moved = any_move;
    std::vector<int> relabel(g.n, -1);
    res.community.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        int& r = relabel[community[v]];
        if (r < 0) r = res.count++;
        res.community[v] = r;
    }
    return res;
}

std::vector<int> dense_by_first_appearance(const std::vector<int>& labels) {
    std::vector<int> out(labels.size());
    std::unordered_map<int, int> map;
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = map.try_emplace(labels[i], next);
        if (inserted) ++next;
        out[i] = it->second;
    }
    return out;
}

}  // namespace

int Partition::cluster_count() const {
    return cluster.empty() ? 0 : *std::max_element(cluster.begin(), cluster.end()) + 1;
}

std::optional<int> Partition::cluster_of(std::string_view node) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    if (it == nodes.end() || *it != node) return std::nullopt;
    return cluster[static_cast<std::size_t>(it - nodes.begin())];
}

double modularity(const UndirectedGraph& g, const std::vector<int>& membership, double resolution) {
    const auto& adj = g.adjacency();
    int k = membership.empty() ? 0 : *std::max_element(membership.begin(), membership.end()) + 1;
    std::vector<double> internal(k, 0.0), tot(k, 0.0);
    double total = 0.0;
    for (int v = 0; v < g.size(); ++v) {
        for (SparseAdjacency::InnerIterator it(adj, v); it; ++it) {
            tot[membership[v]] += it.value();
            total += it.value();
            if (membership[it.col()] == membership[v]) internal[membership[v]] += it.value();
        }
    }
    return level_modularity(internal, tot, total, resolution);
}

Partition louvain(const UndirectedGraph& g, std::uint64_t seed, double resolution) {
    Partition p;
    p.seed = seed;
    const int n = g.size();
    std::vector<int> membership(n);
    std::iota(membership.begin(), membership.end(), 0);

    LevelGraph level = from_projection(g);
    if (level.total > 0.0) {
        Rng rng(seed);
        while (true) {
            auto res = local_moves(level, rng, resolution, p.modularity_trace);
            if (!res.moved) break;
            for (int& m : membership) m = res.community[m];
            level = aggregate(level, res.community, res.count);
        }
    }
    p.cluster = dense_by_first_appearance(membership);
    p.modularity = modularity(g, p.cluster, resolution);
    return p;
}

Partition louvain(const InteractionNetwork& net, std::uint64_t seed, double resolution) {
    Partition p = louvain(undirected_projection(net), seed, resolution);
    p.nodes = net.nodes();
    return p;
}

Partition make_partition(std::vector<std::string> nodes, const std::vector<int>& labels) {
    if (nodes.size() != labels.size()) throw std::invalid_argument("make_partition: size mismatch");
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
    Partition p;
    std::vector<int> sorted_labels;
    for (std::size_t i : order) {
        if (!p.nodes.empty() && p.nodes.back() == nodes[i]) throw std::invalid_argument("make_partition: duplicate node");
        p.nodes.push_back(nodes[i]);
        sorted_labels.push_back(labels[i]);
    }
    p.cluster = dense_by_first_appearance(sorted_labels);
    return p;
}

void write_partition_csv(std::ostream& out, const Partition& p) {
    out << "node,cluster\n";
    for (std::size_t i = 0; i < p.size(); ++i) out << csv_field(p.nodes[i]) << ',' << p.cluster[i] << '\n';
}

}  // namespace streamcmp
