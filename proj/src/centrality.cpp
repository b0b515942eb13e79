#include "streamcmp/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "streamcmp/parallel.hpp"
#include "streamcmp/table.hpp"

namespace streamcmp {

std::string_view to_string(CentralityMeasure m) {
    switch (m) {
        case CentralityMeasure::degree: return "degree";
        case CentralityMeasure::betweenness: return "betweenness";
        case CentralityMeasure::closeness: return "closeness";
        case CentralityMeasure::eigenvector: return "eigenvector";
    }
    return "?";
}

std::optional<CentralityMeasure> parse_centrality_measure(std::string_view s) {
    for (auto m : kAllMeasures)
        if (to_string(m) == s) return m;
    return std::nullopt;
}

Eigen::VectorXd degree_centrality(const DirectedGraph& g) {
    Eigen::VectorXd d(g.size());
    for (int v = 0; v < g.size(); ++v) d(v) = static_cast<double>(g.out(v).size() + g.in(v).size());
    return d;
}

namespace {

// Single-source shortest-path sweep shared by betweenness and closeness.
// `forward(v)` yields successors, `backward(v)` predecessors.
struct BrandesScratch {
    explicit BrandesScratch(int n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0), order(n) {}
    std::vector<int> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<int> order;
};

template <typename Forward, typename Backward>
void brandes_source(int s, BrandesScratch& w, Forward forward, Backward backward, Eigen::VectorXd& between,
                    double& dist_sum, std::size_t& reached) {
    std::size_t head = 0, tail = 0;
    w.order[tail++] = s;
    w.dist[s] = 0;
    w.sigma[s] = 1.0;
    while (head < tail) {
        int v = w.order[head++];
        for (int x : forward(v)) {
            if (w.dist[x] < 0) {
                w.dist[x] = w.dist[v] + 1;
                w.order[tail++] = x;
            }
            if (w.dist[x] == w.dist[v] + 1) w.sigma[x] += w.sigma[v];
        }
    }
    dist_sum = 0.0;
    for (std::size_t i = 0; i < tail; ++i) dist_sum += w.dist[w.order[i]];
    reached = tail;
    for (std::size_t i = tail; i-- > 1;) {
        int x = w.order[i];
        const double coeff = (1.0 + w.delta[x]) / w.sigma[x];
        for (int v : backward(x))
            if (w.dist[v] == w.dist[x] - 1) w.delta[v] += w.sigma[v] * coeff;
        between(x) += w.delta[x];
    }
    for (std::size_t i = 0; i < tail; ++i) {
        int x = w.order[i];
        w.dist[x] = -1;
        w.sigma[x] = 0.0;
        w.delta[x] = 0.0;
    }
}

template <typename Forward, typename Backward>
PathCentralities sweep(int n, Forward forward, Backward backward, bool undirected) {
    PathCentralities out;
    out.betweenness = Eigen::VectorXd::Zero(n);
    out.closeness = Eigen::VectorXd::Zero(n);
    std::vector<Eigen::VectorXd> partial(kParallelBlocks);
    for_each_block(static_cast<std::size_t>(n), [&](std::size_t b, std::size_t lo, std::size_t hi) {
        BrandesScratch scratch(n);
        Eigen::VectorXd local = Eigen::VectorXd::Zero(n);
        for (std::size_t s = lo; s < hi; ++s) {
            double dist_sum = 0.0;
            std::size_t reached = 0;
            brandes_source(static_cast<int>(s), scratch, forward, backward, local, dist_sum, reached);
            if (reached > 1 && n > 1) {
                const double r = static_cast<double>(reached - 1);
                out.closeness(static_cast<Eigen::Index>(s)) = (r / dist_sum) * (r / static_cast<double>(n - 1));
            }
        }
        partial[b] = std::move(local);
    });
    for (const auto& p : partial)
        if (p.size() == n) out.betweenness += p;
    if (undirected) out.betweenness *= 0.5;
    return out;
}

PathCentralities sweep_undirected(const UndirectedGraph& g) {
    auto nb = [&](int v) { return g.neighbors(v); };
    return sweep(g.size(), nb, nb, true);
}

PathCentralities sweep_directed(const DirectedGraph& g) {
    return sweep(
        g.size(), [&](int v) { return g.out(v); }, [&](int v) { return g.in(v); }, false);
}

}  // namespace

Eigen::VectorXd betweenness_centrality(const UndirectedGraph& g) { return sweep_undirected(g).betweenness; }
Eigen::VectorXd betweenness_centrality(const DirectedGraph& g) { return sweep_directed(g).betweenness; }
Eigen::VectorXd closeness_centrality(const UndirectedGraph& g) { return sweep_undirected(g).closeness; }
Eigen::VectorXd closeness_centrality(const DirectedGraph& g) { return sweep_directed(g).closeness; }
PathCentralities path_centralities(const UndirectedGraph& g) { return sweep_undirected(g); }

Eigen::SparseMatrix<double, Eigen::RowMajor, int> binary_adjacency(const UndirectedGraph& g) {
    Eigen::SparseMatrix<double, Eigen::RowMajor, int> m = g.adjacency();
    m.coeffs().setOnes();
    return m;
}

EigenvectorResult eigenvector_centrality(const Eigen::SparseMatrix<double, Eigen::RowMajor, int>& m, double tolerance,
                                         int max_iterations) {
    EigenvectorResult res;
    const Eigen::Index n = m.rows();
    if (n == 0) {
        res.converged = true;
        return res;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Eigen::VectorXd y(n);
    for (int it = 1; it <= max_iterations; ++it) {
        y.noalias() = m * x;
        y += x;
        y /= y.norm();
        const double change = (y - x).norm();
        x.swap(y);
        res.iterations = it;
        if (change < tolerance) {
            res.converged = true;
            break;
        }
    }
    res.scores = x.cwiseAbs();
    return res;
}

namespace {

Eigen::SparseMatrix<double, Eigen::RowMajor, int> directed_in_matrix(const DirectedGraph& g) {
    // Row v sums over in-neighbors, i.e. x' = A^T x.
    std::vector<Eigen::Triplet<double, int>> t;
    for (int v = 0; v < g.size(); ++v)
        for (int u : g.in(v)) t.emplace_back(v, u, 1.0);
    Eigen::SparseMatrix<double, Eigen::RowMajor, int> m(g.size(), g.size());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

CentralityVector make_vector(const InteractionNetwork& net, CentralityMeasure m, Eigen::VectorXd scores) {
    CentralityVector v;
    v.measure = m;
    v.provenance = net.provenance();
    v.nodes = net.nodes();
    v.scores = std::move(scores);
    return v;
}

}  // namespace

std::vector<CentralityVector> all_centralities(const InteractionNetwork& net, const CentralityOptions& options) {
    if (net.empty()) throw std::invalid_argument("centrality: empty network");
    const DirectedGraph dg(net);
    std::vector<CentralityVector> out;
    out.push_back(make_vector(net, CentralityMeasure::degree, degree_centrality(dg)));
    EigenvectorResult ev;
    PathCentralities paths;
    if (options.directed) {
        paths = sweep_directed(dg);
        ev = eigenvector_centrality(directed_in_matrix(dg), options.eigen_tolerance, options.eigen_max_iterations);
    } else {
        const UndirectedGraph ug = undirected_projection(net);
        paths = sweep_undirected(ug);
        ev = eigenvector_centrality(binary_adjacency(ug), options.eigen_tolerance, options.eigen_max_iterations);
    }
    out.push_back(make_vector(net, CentralityMeasure::betweenness, std::move(paths.betweenness)));
    out.push_back(make_vector(net, CentralityMeasure::closeness, std::move(paths.closeness)));
    auto eig = make_vector(net, CentralityMeasure::eigenvector, std::move(ev.scores));
    eig.converged = ev.converged;
    eig.iterations = ev.iterations;
    out.push_back(std::move(eig));
    return out;
}

CentralityVector centrality(const InteractionNetwork& net, CentralityMeasure measure, const CentralityOptions& options) {
    if (net.empty()) throw std::invalid_argument("centrality: empty network");
    const DirectedGraph dg(net);
    switch (measure) {
        case CentralityMeasure::degree: return make_vector(net, measure, degree_centrality(dg));
        case CentralityMeasure::betweenness:
            return make_vector(net, measure,
                               options.directed ? betweenness_centrality(dg)
                                                : betweenness_centrality(undirected_projection(net)));
        case CentralityMeasure::closeness:
            return make_vector(net, measure,
                               options.directed ? closeness_centrality(dg)
                                                : closeness_centrality(undirected_projection(net)));
        case CentralityMeasure::eigenvector: {
            auto ev = options.directed ? eigenvector_centrality(directed_in_matrix(dg), options.eigen_tolerance,
                                                                options.eigen_max_iterations)
                                       : eigenvector_centrality(binary_adjacency(undirected_projection(net)),
                                                                options.eigen_tolerance, options.eigen_max_iterations);
            auto v = make_vector(net, measure, std::move(ev.scores));
            v.converged = ev.converged;
            v.iterations = ev.iterations;
            return v;
        }
    }
    throw std::logic_error("unknown centrality measure");
}

namespace {

// Scores snapped to a 1e-12 grid relative to the vector maximum.
Eigen::VectorXd snapped(const Eigen::VectorXd& s) {
    if (s.size() == 0) return s;
    const double scale = s.cwiseAbs().maxCoeff();
    if (scale == 0.0) return s;
    return (s / scale * 1e12).array().round();
}

}  // namespace

std::vector<std::size_t> rank_order(const CentralityVector& v) {
    const Eigen::VectorXd s = snapped(v.scores);
    std::vector<std::size_t> order(v.nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
        if (s(ia) != s(ib)) return s(ia) > s(ib);
        return v.nodes[a] < v.nodes[b];
    });
    return order;
}

RankComparison compare_rankings(const CentralityVector& a, const CentralityVector& b, std::size_t k) {
    if (a.measure != b.measure) throw std::invalid_argument("compare_rankings: measures differ");
    RankComparison cmp;
    cmp.measure = a.measure;
    cmp.k = k;
    const auto order_a = rank_order(a);
    const auto order_b = rank_order(b);
    std::unordered_map<std::string_view, std::size_t> top_b;  // node -> (rank, index)
    std::unordered_map<std::string_view, std::size_t> top_b_index;
    for (std::size_t r = 0; r < std::min(k, order_b.size()); ++r) {
        top_b[b.nodes[order_b[r]]] = r + 1;
        top_b_index[b.nodes[order_b[r]]] = order_b[r];
    }
    std::vector<double> xs, ys;
    const Eigen::VectorXd sa = snapped(a.scores), sb = snapped(b.scores);
    for (std::size_t r = 0; r < std::min(k, order_a.size()); ++r) {
        const auto& node = a.nodes[order_a[r]];
        auto it = top_b.find(node);
        if (it == top_b.end()) continue;
        cmp.pairs.push_back({node, r + 1, it->second});
        xs.push_back(sa(static_cast<Eigen::Index>(order_a[r])));
        ys.push_back(sb(static_cast<Eigen::Index>(top_b_index[node])));
    }
    cmp.common_nodes = cmp.pairs.size();
    if (cmp.common_nodes >= 2) {
        const Eigen::Map<const Eigen::VectorXd> x(xs.data(), static_cast<Eigen::Index>(xs.size()));
        const Eigen::Map<const Eigen::VectorXd> y(ys.data(), static_cast<Eigen::Index>(ys.size()));
        cmp.kendall_tau = kendall_tau_b(x, y);
        cmp.spearman_rho = spearman_rho(x, y);
        if (cmp.kendall_tau) cmp.band_tau = strength_band(*cmp.kendall_tau);
        if (cmp.spearman_rho) cmp.band_rho = strength_band(*cmp.spearman_rho);
    }
    return cmp;
}

std::string export_scatter(const RankComparison& cmp) {
    std::string out = "node,rank_a,rank_b\n";
    for (const auto& p : cmp.pairs) out += fmt::format("{},{},{}\n", csv_field(p.node), p.rank_a, p.rank_b);
    return out;
}

std::string coefficient_table_csv(const std::vector<RankComparison>& rows, std::string_view prefix_column,
                                  const std::vector<std::string>& prefixes) {
    std::string out;
    if (!prefix_column.empty()) out += std::string(prefix_column) + ",";
    out += "measure,tau,rho,common_nodes,band_tau,band_rho\n";
    auto num = [](const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : std::string("undefined"); };
    auto band = [](const std::optional<StrengthBand>& b) { return b ? std::string(to_string(*b)) : std::string("undefined"); };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!prefix_column.empty()) out += csv_field(i < prefixes.size() ? prefixes[i] : std::string{}) + ",";
        out += fmt::format("{},{},{},{},{},{}\n", to_string(r.measure), num(r.kendall_tau), num(r.spearman_rho),
                           r.common_nodes, band(r.band_tau), band(r.band_rho));
    }
    return out;
}

}  // namespace streamcmp
