#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "streamcmp/network.hpp"
#include "streamcmp/projection.hpp"
#include "streamcmp/rank_correlation.hpp"

namespace streamcmp {

enum class CentralityMeasure { degree, betweenness, closeness, eigenvector };

inline constexpr CentralityMeasure kAllMeasures[] = {CentralityMeasure::degree, CentralityMeasure::betweenness,
                                                     CentralityMeasure::closeness, CentralityMeasure::eigenvector};

std::string_view to_string(CentralityMeasure m);
std::optional<CentralityMeasure> parse_centrality_measure(std::string_view s);

struct CentralityVector {
    CentralityMeasure measure = CentralityMeasure::degree;
    std::string provenance;
    std::vector<std::string> nodes;
    Eigen::VectorXd scores;
    // Eigenvector only: false when the iteration cap was hit; scores then
    // hold the last iterate.
    bool converged = true;
    int iterations = 0;
};

struct CentralityOptions {
    // Betweenness, closeness and eigenvector on the directed graph instead
    // of the undirected projection.
    bool directed = false;
    double eigen_tolerance = 1e-8;
    int eigen_max_iterations = 1000;
};

/// In-degree plus out-degree over distinct directed non-loop edges.
Eigen::VectorXd degree_centrality(const DirectedGraph& g);

/// Brandes betweenness, unnormalized; each unordered pair counted once.
Eigen::VectorXd betweenness_centrality(const UndirectedGraph& g);
Eigen::VectorXd betweenness_centrality(const DirectedGraph& g);

/// Classic closeness within the node's component, scaled by
/// (|C| - 1) / (n - 1). Isolated nodes score 0.
Eigen::VectorXd closeness_centrality(const UndirectedGraph& g);
Eigen::VectorXd closeness_centrality(const DirectedGraph& g);

/// Betweenness and closeness from one sweep of BFS sources.
struct PathCentralities {
    Eigen::VectorXd betweenness;
    Eigen::VectorXd closeness;
};
PathCentralities path_centralities(const UndirectedGraph& g);

struct EigenvectorResult {
    Eigen::VectorXd scores;  // L2-normalized, non-negative
    bool converged = false;
    int iterations = 0;
};

/// Power iteration on (M + I), which shares its eigenvectors with M and
/// avoids oscillation on bipartite graphs. Converged when successive
/// iterates differ by less than `tolerance` in L2.
EigenvectorResult eigenvector_centrality(const Eigen::SparseMatrix<double, Eigen::RowMajor, int>& m, double tolerance,
                                         int max_iterations);

/// Binary (unweighted) adjacency of the projection.
Eigen::SparseMatrix<double, Eigen::RowMajor, int> binary_adjacency(const UndirectedGraph& g);

CentralityVector centrality(const InteractionNetwork& net, CentralityMeasure measure,
                            const CentralityOptions& options = {});

/// All four measures, sharing the BFS sweep between betweenness and closeness.
std::vector<CentralityVector> all_centralities(const InteractionNetwork& net, const CentralityOptions& options = {});

struct RankPair {
    std::string node;
    std::size_t rank_a = 0;  // 1-based, ties broken by node id
    std::size_t rank_b = 0;
};

struct RankComparison {
    CentralityMeasure measure = CentralityMeasure::degree;
    std::size_t k = 1000;
    std::size_t common_nodes = 0;
    std::vector<RankPair> pairs;  // ordered by rank_a
    std::optional<double> kendall_tau;
    std::optional<double> spearman_rho;
    std::optional<StrengthBand> band_tau;
    std::optional<StrengthBand> band_rho;

    bool defined() const { return kendall_tau.has_value() && spearman_rho.has_value(); }
};

/// Ordinal ranking by descending score, ties broken by node id.
std::vector<std::size_t> rank_order(const CentralityVector& v);

/// Intersects the top-k lists and correlates the two score sequences over
/// the common nodes (tau-b and midrank rho, so equal scores stay tied).
/// Scores within 1e-12 of each other relative to the vector maximum count
/// as equal, so floating-point noise does not split ties.
RankComparison compare_rankings(const CentralityVector& a, const CentralityVector& b, std::size_t k = 1000);

/// Scatter data: `node,rank_a,rank_b`, header only when nothing is common.
std::string export_scatter(const RankComparison& cmp);

/// One row per comparison: measure,tau,rho,common_nodes,band_tau,band_rho.
std::string coefficient_table_csv(const std::vector<RankComparison>& rows, std::string_view prefix_column = {},
                                  const std::vector<std::string>& prefixes = {});

}  // namespace streamcmp
