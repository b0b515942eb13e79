#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "streamcmp/centrality.hpp"
#include "streamcmp/corpus_stats.hpp"
#include "streamcmp/graph_metrics.hpp"
#include "streamcmp/network.hpp"
#include "streamcmp/partition_compare.hpp"

namespace streamcmp {

inline constexpr const char* kToolVersion = "streamcmp 1.0.0";

/// value_B / value_A; empty when value_A is zero.
struct BalanceRow {
    std::string statistic;
    double a = 0.0;
    double b = 0.0;
    std::optional<double> ratio;
};

std::vector<BalanceRow> balance_rows(const NetworkStats& a, const NetworkStats& b);

struct NetworkSection {
    NetworkKind kind = NetworkKind::mention;
    NetworkStats a;
    NetworkStats b;
    std::vector<BalanceRow> balance;
};

struct RankSection {
    NetworkKind kind = NetworkKind::mention;
    std::optional<std::string> skipped;  // reason, when not computed
    std::vector<RankComparison> comparisons;  // one per measure
};

struct PartitionSection {
    NetworkKind kind = NetworkKind::mention;
    std::optional<std::string> skipped;
    PartitionComparison comparison;
};

struct PairReport {
    std::size_t index_a = 0;
    std::size_t index_b = 0;
    OverlapStats overlap;
    std::vector<NetworkSection> networks;
    std::vector<RankSection> rankings;  // mention and reply only
    std::vector<PartitionSection> partitions;
};

struct ReportMetadata {
    std::string tool_version = kToolVersion;
    std::vector<std::string> labels;
    std::vector<std::string> inputs;
    std::uint64_t louvain_seed = 0;
    std::size_t top_k = 1000;
    std::map<std::string, std::string> flags;
};

struct ComparisonReport {
    ReportMetadata metadata;
    std::vector<CorpusStats> corpus_stats;  // same order as metadata.labels
    std::vector<PairReport> pairs;
    TimelineSeries timeline;
};

std::string report_markdown(const ComparisonReport& report);
std::string report_json(const ComparisonReport& report);

/// Writes report.md, report.json and one CSV per table into `dir` (created
/// if needed). Returns the written paths in write order.
std::vector<std::filesystem::path> write_report(const ComparisonReport& report, const std::filesystem::path& dir);

}  // namespace streamcmp
