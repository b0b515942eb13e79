#include "streamcmp/graph_metrics.hpp"

#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "streamcmp/louvain.hpp"
#include "streamcmp/parallel.hpp"
#include "streamcmp/table.hpp"

namespace streamcmp {

namespace {

// BFS scratch reused across sources.
struct Bfs {
    explicit Bfs(int n) : dist(n, -1), queue(n) {}

    int run(int source, const UndirectedGraph& g) {
        std::size_t head = 0, tail = 0;
        queue[tail++] = source;
        dist[source] = 0;
        int far = 0;
        while (head < tail) {
            int v = queue[head++];
            int dv = dist[v];
            far = dv;
            for (int w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dv + 1;
                    queue[tail++] = w;
                }
            }
        }
        for (std::size_t i = 0; i < tail; ++i) dist[queue[i]] = -1;
        return far;
    }

    std::vector<int> dist;
    std::vector<int> queue;
};

}  // namespace

std::vector<std::vector<int>> weak_components(const UndirectedGraph& g) {
    const int n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> comps;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<std::vector<int>> weak_components(const InteractionNetwork& net) {
    return weak_components(undirected_projection(net));
}

std::size_t eccentricity(int source, const UndirectedGraph& g) {
    Bfs bfs(g.size());
    return static_cast<std::size_t>(bfs.run(source, g));
}

std::size_t diameter(const std::vector<int>& component, const UndirectedGraph& g) {
    if (component.size() <= 1) return 0;
    std::vector<int> block_max(kParallelBlocks, 0);
    for_each_block(component.size(), [&](std::size_t b, std::size_t lo, std::size_t hi) {
        Bfs bfs(g.size());
        int best = 0;
        for (std::size_t i = lo; i < hi; ++i) best = std::max(best, bfs.run(component[i], g));
        block_max[b] = best;
    });
    return static_cast<std::size_t>(*std::max_element(block_max.begin(), block_max.end()));
}

double reciprocity(const InteractionNetwork& net) {
    const auto& edges = net.edges();
    std::size_t total = 0, mutual = 0;
    auto less = [](const Edge& a, const Edge& b) { return std::tie(a.source, a.target) < std::tie(b.source, b.target); };
    for (const auto& e : edges) {
        if (e.source == e.target) continue;
        ++total;
        Edge rev{e.target, e.source, 0};
        auto it = std::lower_bound(edges.begin(), edges.end(), rev, less);
        if (it != edges.end() && it->source == e.target && it->target == e.source) ++mutual;
    }
    return total == 0 ? 0.0 : static_cast<double>(mutual) / static_cast<double>(total);
}

std::size_t triangle_count(const UndirectedGraph& g) {
    std::size_t triangles = 0;
    for (int u = 0; u < g.size(); ++u) {
        auto nu = g.neighbors(u);
        for (int v : nu) {
            if (v <= u) continue;
            auto nv = g.neighbors(v);
            // Count w > v adjacent to both.
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b)
                    ++a;
                else if (*b < *a)
                    ++b;
                else {
                    ++triangles;
                    ++a;
                    ++b;
                }
            }
        }
    }
    return triangles;
}

double transitivity(const UndirectedGraph& g) {
    double triples = 0.0;
    for (int v = 0; v < g.size(); ++v) {
        double d = g.degree(v);
        triples += d * (d - 1.0) / 2.0;
    }
    if (triples == 0.0) return 0.0;
    return 3.0 * static_cast<double>(triangle_count(g)) / triples;
}

std::vector<int> core_numbers(const UndirectedGraph& g) {
    const int n = g.size();
    std::vector<int> deg(n);
    int max_deg = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    // Bucket sort by degree, then peel in order.
    std::vector<int> bin(max_deg + 1, 0);
    for (int v = 0; v < n; ++v) ++bin[deg[v]];
    int start = 0;
    for (int d = 0; d <= max_deg; ++d) {
        int count = bin[d];
        bin[d] = start;
        start += count;
    }
    std::vector<int> pos(n), vert(n);
    for (int v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        vert[pos[v]] = v;
    }
    for (int d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
    if (max_deg >= 0 && !bin.empty()) bin[0] = 0;
    for (int i = 0; i < n; ++i) {
        int v = vert[i];
        for (int u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                int du = deg[u];
                int pu = pos[u];
                int pw = bin[du];
                int w = vert[pw];
                if (u != w) {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return deg;
}

std::size_t max_k_core(const UndirectedGraph& g) {
    auto cores = core_numbers(g);
    if (cores.empty()) return 0;
    return static_cast<std::size_t>(*std::max_element(cores.begin(), cores.end()));
}

NetworkStats network_stats(const InteractionNetwork& net, std::uint64_t louvain_seed, Partition* partition_out) {
    NetworkStats s;
    s.louvain_seed = louvain_seed;
    s.nodes = net.node_count();
    s.edges = net.edge_count();
    if (s.nodes == 0) return s;
    s.empty = false;
    const double n = static_cast<double>(s.nodes);
    const double e = static_cast<double>(s.edges);
    s.average_degree = e / n;
    s.density = s.nodes > 1 ? e / (n * (n - 1.0)) : 0.0;
    s.mean_edge_weight = s.edges == 0 ? 0.0 : static_cast<double>(net.total_weight()) / e;

    const UndirectedGraph g = undirected_projection(net);
    const auto comps = weak_components(g);
    s.components = comps.size();
    const std::vector<int>* largest = &comps.front();
    for (const auto& c : comps)
        if (c.size() > largest->size()) largest = &c;
    s.largest_component_size = largest->size();
    s.largest_component_diameter = diameter(*largest, g);

    const Partition p = louvain(g, louvain_seed);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(p.cluster_count()), 0);
    for (int c : p.cluster) ++sizes[static_cast<std::size_t>(c)];
    s.clusters = sizes.size();
    s.largest_cluster_size = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    s.modularity = p.modularity;
    if (partition_out) {
        *partition_out = p;
        partition_out->nodes = net.nodes();
    }

    s.reciprocity = reciprocity(net);
    s.transitivity = transitivity(g);
    s.max_k_core = max_k_core(g);
    return s;
}

namespace {

std::vector<std::pair<std::string, std::function<std::string(const NetworkStats&)>>> stat_rows() {
    auto count = [](auto field) {
        return [field](const NetworkStats& s) { return std::to_string(s.*field); };
    };
    auto ratio = [](auto field) {
        return [field](const NetworkStats& s) { return fmt::format("{:.3f}", s.*field); };
    };
    return {
        {"Nodes", count(&NetworkStats::nodes)},
        {"Edges", count(&NetworkStats::edges)},
        {"Average degree", ratio(&NetworkStats::average_degree)},
        {"Density", ratio(&NetworkStats::density)},
        {"Mean edge weight", ratio(&NetworkStats::mean_edge_weight)},
        {"Components", count(&NetworkStats::components)},
        {"Largest component", count(&NetworkStats::largest_component_size)},
        {"- Diameter", count(&NetworkStats::largest_component_diameter)},
        {"Clusters", count(&NetworkStats::clusters)},
        {"Largest cluster", count(&NetworkStats::largest_cluster_size)},
        {"Reciprocity", ratio(&NetworkStats::reciprocity)},
        {"Transitivity", ratio(&NetworkStats::transitivity)},
        {"Max k-core", count(&NetworkStats::max_k_core)},
        {"Status", [](const NetworkStats& s) { return std::string(s.empty ? "empty" : "ok"); }},
    };
}

}  // namespace

std::string network_stats_markdown(const std::vector<std::string>& columns, const std::vector<NetworkStats>& stats) {
    std::string out = "| |";
    for (const auto& c : columns) out += " " + md_cell(c) + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out += "---:|";
    out += "\n";
    for (const auto& [name, get] : stat_rows()) {
        out += "| " + name + " |";
        for (const auto& s : stats) out += " " + get(s) + " |";
        out += "\n";
    }
    return out;
}

std::string network_stats_csv(const std::vector<std::string>& columns, const std::vector<NetworkStats>& stats) {
    std::string out = "statistic";
    for (const auto& c : columns) out += "," + csv_field(c);
    out += "\n";
    for (const auto& [name, get] : stat_rows()) {
        out += csv_field(name);
        for (const auto& s : stats) out += "," + get(s);
        out += "\n";
    }
    return out;
}

}  // namespace streamcmp
