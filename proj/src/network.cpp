#include "streamcmp/network.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "streamcmp/table.hpp"

namespace streamcmp {

std::string_view to_string(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::mention: return "mention";
        case NetworkKind::reply: return "reply";
        case NetworkKind::retweet: return "retweet";
    }
    return "?";
}

std::optional<NetworkKind> parse_network_kind(std::string_view s) {
    if (s == "mention") return NetworkKind::mention;
    if (s == "reply") return NetworkKind::reply;
    if (s == "retweet") return NetworkKind::retweet;
    return std::nullopt;
}

InteractionNetwork::InteractionNetwork(NetworkKind kind, std::string provenance, std::vector<std::string> nodes,
                                       std::vector<Edge> edges)
    : kind_(kind), provenance_(std::move(provenance)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    if (!std::is_sorted(nodes_.begin(), nodes_.end()) ||
        std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
        throw std::invalid_argument("InteractionNetwork: nodes must be sorted and unique");
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.source >= nodes_.size() || e.target >= nodes_.size())
            throw std::invalid_argument("InteractionNetwork: edge endpoint out of range");
        if (e.weight == 0) throw std::invalid_argument("InteractionNetwork: zero weight edge");
        if (i > 0 && edges_[i - 1].source == e.source && edges_[i - 1].target == e.target)
            throw std::invalid_argument("InteractionNetwork: duplicate edge");
    }
}

std::optional<NodeIndex> InteractionNetwork::index_of(std::string_view id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_.begin());
}

std::optional<std::uint64_t> InteractionNetwork::weight(std::string_view source, std::string_view target) const {
    auto s = index_of(source);
    auto t = index_of(target);
    if (!s || !t) return std::nullopt;
    Edge key{*s, *t, 0};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& a, const Edge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    if (it == edges_.end() || it->source != *s || it->target != *t) return std::nullopt;
    return it->weight;
}

std::uint64_t InteractionNetwork::total_weight() const {
    return std::accumulate(edges_.begin(), edges_.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const Edge& e) { return acc + e.weight; });
}

bool InteractionNetwork::has_self_loops() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.source == e.target; });
}

NodeIndex NetworkBuilder::intern(const std::string& id) {
    auto [it, inserted] = index_.try_emplace(id, static_cast<NodeIndex>(ids_.size()));
    if (inserted) ids_.push_back(id);
    return it->second;
}

void NetworkBuilder::add_node(const std::string& id) { intern(id); }

void NetworkBuilder::add_interaction(const std::string& source, const std::string& target, std::uint64_t count) {
    NodeIndex s = intern(source);
    NodeIndex t = intern(target);
    if (count == 0 || (s == t && !allow_self_loops_)) return;
    weights_[(std::uint64_t{s} << 32) | t] += count;
}

InteractionNetwork NetworkBuilder::build() const {
    std::vector<NodeIndex> order(ids_.size());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return ids_[a] < ids_[b]; });
    std::vector<NodeIndex> remap(ids_.size());
    std::vector<std::string> nodes;
    nodes.reserve(ids_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        remap[order[i]] = static_cast<NodeIndex>(i);
        nodes.push_back(ids_[order[i]]);
    }
    std::vector<Edge> edges;
    edges.reserve(weights_.size());
    for (const auto& [key, w] : weights_)
        edges.push_back({remap[static_cast<NodeIndex>(key >> 32)], remap[static_cast<NodeIndex>(key & 0xFFFFFFFFu)], w});
    InteractionNetwork net(kind_, provenance_, std::move(nodes), std::move(edges));
    net.set_unresolved(unresolved_);
    return net;
}

InteractionNetwork build_mention_network(const Corpus& corpus, const BuildOptions& options) {
    NetworkBuilder b(NetworkKind::mention, corpus.label(), options.allow_self_loops);
    for (const auto& r : corpus) {
        if (r.is_retweet() && !options.include_retweet_mentions) continue;
        if (options.count_per_tweet) {
            std::set<std::string> once;
            for (const auto& m : r.mentions) once.insert(m.account_id);
            for (const auto& id : once) b.add_interaction(r.author_id, id);
        } else {
            for (const auto& m : r.mentions) b.add_interaction(r.author_id, m.account_id);
        }
    }
    return b.build();
}

InteractionNetwork build_reply_network(const Corpus& corpus, const BuildOptions& options) {
    NetworkBuilder b(NetworkKind::reply, corpus.label(), options.allow_self_loops);
    for (const auto& r : corpus) {
        if (!r.is_reply()) continue;
        if (r.reply_to->author_id.empty())
            b.add_unresolved();
        else
            b.add_interaction(r.author_id, r.reply_to->author_id);
    }
    return b.build();
}

InteractionNetwork build_retweet_network(const Corpus& corpus, const BuildOptions& options) {
    NetworkBuilder b(NetworkKind::retweet, corpus.label(), options.allow_self_loops);
    for (const auto& r : corpus) {
        const std::optional<TweetRef>* ref = nullptr;
        if (r.is_retweet())
            ref = &r.retweet_of;
        else if (r.is_quote() && options.include_quotes)
            ref = &r.quote_of;
        if (!ref) continue;
        if ((*ref)->author_id.empty())
            b.add_unresolved();
        else
            b.add_interaction(r.author_id, (*ref)->author_id);
    }
    return b.build();
}

InteractionNetwork build_network(const Corpus& corpus, NetworkKind kind, const BuildOptions& options) {
    switch (kind) {
        case NetworkKind::mention: return build_mention_network(corpus, options);
        case NetworkKind::reply: return build_reply_network(corpus, options);
        case NetworkKind::retweet: return build_retweet_network(corpus, options);
    }
    throw std::logic_error("unknown network kind");
}

void write_edge_list(std::ostream& out, const InteractionNetwork& net) {
    out << "source,target,weight\n";
    for (const auto& e : net.edges())
        out << csv_field(net.nodes()[e.source]) << ',' << csv_field(net.nodes()[e.target]) << ',' << e.weight << '\n';
}

void write_node_list(std::ostream& out, const InteractionNetwork& net) {
    out << "node\n";
    for (const auto& n : net.nodes()) out << csv_field(n) << '\n';
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

InteractionNetwork read_network(std::istream& edges, std::istream* nodes, NetworkKind kind, std::string provenance) {
    NetworkBuilder b(kind, std::move(provenance), true);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(edges, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = split_csv_line(line);
        if (line_no == 1 && f.size() == 3 && f[0] == "source") continue;
        if (f.size() != 3) throw std::runtime_error("edge list line " + std::to_string(line_no) + ": expected 3 fields");
        std::uint64_t w = 0;
        auto [p, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), w);
        if (ec != std::errc{} || p != f[2].data() + f[2].size() || w == 0)
            throw std::runtime_error("edge list line " + std::to_string(line_no) + ": bad weight");
        b.add_interaction(f[0], f[1], w);
    }
    if (nodes) {
        line_no = 0;
        while (std::getline(*nodes, line)) {
            ++line_no;
            if (line.empty() || line == "\r") continue;
            auto f = split_csv_line(line);
            if (line_no == 1 && f.size() == 1 && f[0] == "node") continue;
            b.add_node(f[0]);
        }
    }
    return b.build();
}

}  // namespace streamcmp
