#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "streamcmp/corpus.hpp"

namespace streamcmp {

using NodeIndex = std::uint32_t;

enum class NetworkKind { mention, reply, retweet };

std::string_view to_string(NetworkKind kind);
std::optional<NetworkKind> parse_network_kind(std::string_view s);

struct Edge {
    NodeIndex source = 0;
    NodeIndex target = 0;
    std::uint64_t weight = 0;

    bool operator==(const Edge&) const = default;
};

/// Directed weighted account graph of one interaction kind.
///
/// Nodes are account ids in sorted order; NodeIndex is the position in that
/// order. Edges are sorted by (source, target), weights are >= 1.
class InteractionNetwork {
public:
    InteractionNetwork() = default;
    InteractionNetwork(NetworkKind kind, std::string provenance, std::vector<std::string> nodes,
                       std::vector<Edge> edges);

    NetworkKind kind() const { return kind_; }
    const std::string& provenance() const { return provenance_; }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty(); }

    std::optional<NodeIndex> index_of(std::string_view id) const;
    std::optional<std::uint64_t> weight(std::string_view source, std::string_view target) const;
    std::uint64_t total_weight() const;
    bool has_self_loops() const;

    // Interactions whose target author could not be resolved.
    std::size_t unresolved() const { return unresolved_; }
    void set_unresolved(std::size_t n) { unresolved_ = n; }

    bool operator==(const InteractionNetwork&) const = default;

private:
    NetworkKind kind_ = NetworkKind::mention;
    std::string provenance_;
    std::vector<std::string> nodes_;
    std::vector<Edge> edges_;
    std::size_t unresolved_ = 0;
};

/// Accumulates interactions by account id and produces a network.
class NetworkBuilder {
public:
    NetworkBuilder(NetworkKind kind, std::string provenance, bool allow_self_loops = false)
        : kind_(kind), provenance_(std::move(provenance)), allow_self_loops_(allow_self_loops) {}

    void add_node(const std::string& id);
    // Both endpoints become nodes even when a self-loop is discarded.
    void add_interaction(const std::string& source, const std::string& target, std::uint64_t count = 1);
    void add_unresolved() { ++unresolved_; }

    InteractionNetwork build() const;

private:
    NodeIndex intern(const std::string& id);

    NetworkKind kind_;
    std::string provenance_;
    bool allow_self_loops_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<std::string> ids_;
    std::unordered_map<std::uint64_t, std::uint64_t> weights_;
    std::size_t unresolved_ = 0;
};

struct BuildOptions {
    bool allow_self_loops = false;
    bool include_retweet_mentions = true;
    bool include_quotes = false;
    bool count_per_tweet = false;  // collapse repeated mentions within one tweet
};

InteractionNetwork build_mention_network(const Corpus& corpus, const BuildOptions& options = {});
InteractionNetwork build_reply_network(const Corpus& corpus, const BuildOptions& options = {});
InteractionNetwork build_retweet_network(const Corpus& corpus, const BuildOptions& options = {});
InteractionNetwork build_network(const Corpus& corpus, NetworkKind kind, const BuildOptions& options = {});

/// `source,target,weight` with a header row.
void write_edge_list(std::ostream& out, const InteractionNetwork& net);
/// `node` with a header row; lists every node so isolates survive.
void write_node_list(std::ostream& out, const InteractionNetwork& net);
/// Reads the two files above. Throws std::runtime_error on malformed rows.
InteractionNetwork read_network(std::istream& edges, std::istream* nodes, NetworkKind kind,
                                std::string provenance);

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace streamcmp
