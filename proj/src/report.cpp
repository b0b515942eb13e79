#include "streamcmp/report.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "streamcmp/table.hpp"

namespace streamcmp {

namespace {

using ojson = nlohmann::ordered_json;

std::string fixed3(double v) { return fmt::format("{:.3f}", v); }

std::string opt3(const std::optional<double>& v) { return v ? fixed3(*v) : "undefined"; }

std::string file_tag(const std::string& label) {
    std::string out;
    for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return out;
}

std::string pair_tag(const ComparisonReport& r, const PairReport& p) {
    return file_tag(r.metadata.labels[p.index_a]) + "_vs_" + file_tag(r.metadata.labels[p.index_b]);
}

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson key_json(const std::optional<CountedKey>& k) {
    if (!k) return nullptr;
    return ojson{{"key", k->key}, {"count", k->count}};
}

ojson stats_json(const CorpusStats& s) {
    ojson tags = ojson::array();
    for (const auto& t : s.top_hashtags) tags.push_back({{"key", t.key}, {"count", t.count}});
    return ojson{{"tweets", s.tweets},
                 {"accounts", s.accounts},
                 {"retweets", s.retweets},
                 {"retweet_share", s.retweet_share},
                 {"quotes", s.quotes},
                 {"replies", s.replies},
                 {"tweets_with_hashtags", s.tweets_with_hashtags},
                 {"tweets_with_urls", s.tweets_with_urls},
                 {"tweets_with_mentions", s.tweets_with_mentions},
                 {"hashtag_uses", s.hashtag_uses},
                 {"unique_hashtags", s.unique_hashtags},
                 {"url_uses", s.url_uses},
                 {"unique_urls", s.unique_urls},
                 {"mention_uses", s.mention_uses},
                 {"unique_mentioned_accounts", s.unique_mentioned_accounts},
                 {"top_account", key_json(s.top_account)},
                 {"top_mentioned", key_json(s.top_mentioned)},
                 {"top_retweeted", key_json(s.top_retweeted)},
                 {"top_replied", key_json(s.top_replied)},
                 {"top_hashtags", tags},
                 {"top_url", key_json(s.top_url)}};
}

ojson side_json(const OverlapSide& s) {
    return ojson{{"label", s.label},
                 {"tweets", s.tweets},
                 {"unique_tweets", s.unique_tweets},
                 {"unique_tweet_pct", s.unique_tweet_pct},
                 {"accounts", s.accounts},
                 {"unique_accounts", s.unique_accounts},
                 {"unique_account_pct", s.unique_account_pct}};
}

ojson net_json(const NetworkStats& s) {
    return ojson{{"empty", s.empty},
                 {"nodes", s.nodes},
                 {"edges", s.edges},
                 {"average_degree", s.average_degree},
                 {"density", s.density},
                 {"mean_edge_weight", s.mean_edge_weight},
                 {"components", s.components},
                 {"largest_component_size", s.largest_component_size},
                 {"largest_component_diameter", s.largest_component_diameter},
                 {"clusters", s.clusters},
                 {"largest_cluster_size", s.largest_cluster_size},
                 {"reciprocity", s.reciprocity},
                 {"transitivity", s.transitivity},
                 {"max_k_core", s.max_k_core},
                 {"modularity", s.modularity},
                 {"louvain_seed", s.louvain_seed}};
}

ojson band_json(const std::optional<StrengthBand>& b) {
    return b ? ojson(std::string(to_string(*b))) : ojson(nullptr);
}

std::string band_text(const std::optional<StrengthBand>& b) { return b ? std::string(to_string(*b)) : "undefined"; }

std::string sizes_text(const std::vector<std::size_t>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? ", " : "") + std::to_string(sizes[i]);
    return out.empty() ? "-" : out;
}

std::string balance_markdown(const ComparisonReport& r, const PairReport& p, const NetworkSection& n) {
    const auto& la = r.metadata.labels[p.index_a];
    const auto& lb = r.metadata.labels[p.index_b];
    std::string out = fmt::format("| Statistic | {} | {} | Balance ({} / {}) |\n|---|---|---|---|\n", md_cell(la),
                                  md_cell(lb), md_cell(lb), md_cell(la));
    for (const auto& row : n.balance)
        out += fmt::format("| {} | {} | {} | {} |\n", row.statistic, fmt::format("{:g}", row.a), fmt::format("{:g}", row.b),
                           row.ratio ? fixed3(*row.ratio) : "undefined (A = 0)");
    return out;
}

std::string partition_csv(const PairReport& p) {
    std::string out = "network,common_nodes,rand_index,ari\n";
    for (const auto& s : p.partitions) {
        if (s.skipped) {
            out += fmt::format("{},0,skipped,skipped\n", to_string(s.kind));
            continue;
        }
        out += fmt::format("{},{},{},{}\n", to_string(s.kind), s.comparison.common_node_count,
                           s.comparison.rand_index ? fmt::format("{:.6f}", *s.comparison.rand_index) : "undefined",
                           s.comparison.ari ? fmt::format("{:.6f}", *s.comparison.ari) : "undefined");
    }
    return out;
}

std::string cluster_sizes_csv(const PairReport& p) {
    std::string out = "network,rank,size_a,size_b\n";
    for (const auto& s : p.partitions) {
        if (s.skipped) continue;
        const auto& a = s.comparison.top_sizes_a;
        const auto& b = s.comparison.top_sizes_b;
        for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i)
            out += fmt::format("{},{},{},{}\n", to_string(s.kind), i + 1, i < a.size() ? std::to_string(a[i]) : "",
                               i < b.size() ? std::to_string(b[i]) : "");
    }
    return out;
}

std::string balance_csv(const PairReport& p) {
    std::string out = "network,statistic,value_a,value_b,ratio\n";
    for (const auto& n : p.networks)
        for (const auto& row : n.balance)
            out += fmt::format("{},{},{},{},{}\n", to_string(n.kind), csv_field(row.statistic), row.a, row.b,
                               row.ratio ? fmt::format("{}", *row.ratio) : "undefined");
    return out;
}

}  // namespace

std::vector<BalanceRow> balance_rows(const NetworkStats& a, const NetworkStats& b) {
    std::vector<BalanceRow> rows;
    auto add = [&](const char* name, double va, double vb) {
        BalanceRow r{name, va, vb, std::nullopt};
        if (va != 0.0) r.ratio = vb / va;
        rows.push_back(std::move(r));
    };
    auto d = [](std::size_t v) { return static_cast<double>(v); };
    add("Nodes", d(a.nodes), d(b.nodes));
    add("Edges", d(a.edges), d(b.edges));
    add("Average degree", a.average_degree, b.average_degree);
    add("Density", a.density, b.density);
    add("Mean edge weight", a.mean_edge_weight, b.mean_edge_weight);
    add("Components", d(a.components), d(b.components));
    add("Largest component", d(a.largest_component_size), d(b.largest_component_size));
    add("Diameter", d(a.largest_component_diameter), d(b.largest_component_diameter));
    add("Clusters", d(a.clusters), d(b.clusters));
    add("Largest cluster", d(a.largest_cluster_size), d(b.largest_cluster_size));
    add("Reciprocity", a.reciprocity, b.reciprocity);
    add("Transitivity", a.transitivity, b.transitivity);
    add("Max k-core", d(a.max_k_core), d(b.max_k_core));
    return rows;
}

std::string report_markdown(const ComparisonReport& r) {
    const auto& m = r.metadata;
    std::string out = "# Collection comparison report\n\n## Metadata\n\n| Key | Value |\n|---|---|\n";
    out += fmt::format("| Tool | {} |\n", m.tool_version);
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        out += fmt::format("| Corpus {} | {} ({}) |\n", i + 1, md_cell(m.labels[i]),
                           i < m.inputs.size() ? md_cell(m.inputs[i]) : "-");
    out += fmt::format("| Louvain seed | {} |\n| Top-k | {} |\n", m.louvain_seed, m.top_k);
    for (const auto& [k, v] : m.flags) out += fmt::format("| {} | {} |\n", md_cell(k), md_cell(v));

    out += "\n## Dataset statistics\n\n" + stats_table_markdown(m.labels, r.corpus_stats);

    out += "\n## Timeline\n\n";
    if (r.timeline.bins() == 0) {
        out += "Skipped: no records.\n";
    } else {
        out += fmt::format("{} bins of {} from {}; series in timeline.csv.\n", r.timeline.bins(),
                           format_duration(r.timeline.bin_width), format_timestamp(r.timeline.start));
        std::vector<std::size_t> empty_bins(r.timeline.labels.size(), 0);
        for (std::size_t l = 0; l < r.timeline.labels.size(); ++l)
            for (auto c : r.timeline.counts[l]) empty_bins[l] += c == 0;
        out += "\n| Corpus | Empty bins |\n|---|---|\n";
        for (std::size_t l = 0; l < r.timeline.labels.size(); ++l)
            out += fmt::format("| {} | {} |\n", md_cell(r.timeline.labels[l]), empty_bins[l]);
    }

    for (const auto& p : r.pairs) {
        const auto& la = m.labels[p.index_a];
        const auto& lb = m.labels[p.index_b];
        out += fmt::format("\n## {} vs {}\n\n### Overlap\n\n", md_cell(la), md_cell(lb));
        out += overlap_table_markdown(p.overlap);
        for (const auto& n : p.networks) {
            out += fmt::format("\n### {} network\n\n", to_string(n.kind));
            out += network_stats_markdown({la, lb}, {n.a, n.b});
            out += "\n" + balance_markdown(r, p, n);
        }
        out += "\n### Centrality rank comparison\n\nRetweet networks are not compared.\n";
        for (const auto& s : p.rankings) {
            out += fmt::format("\n#### {} network\n\n", to_string(s.kind));
            if (s.skipped) {
                out += "Skipped: " + *s.skipped + "\n";
                continue;
            }
            out += "| Measure | Common nodes | Kendall tau | Band | Spearman rho | Band |\n|---|---|---|---|---|---|\n";
            for (const auto& c : s.comparisons)
                out += fmt::format("| {} | {} | {} | {} | {} | {} |\n", to_string(c.measure), c.common_nodes,
                                   opt3(c.kendall_tau), band_text(c.band_tau), opt3(c.spearman_rho),
                                   band_text(c.band_rho));
        }
        out += "\n### Cluster comparison\n\n| Network | Common nodes | Rand index | ARI | Top sizes A | Top sizes B |\n"
               "|---|---|---|---|---|---|\n";
        for (const auto& s : p.partitions) {
            if (s.skipped) {
                out += fmt::format("| {} | skipped: {} | | | | |\n", to_string(s.kind), md_cell(*s.skipped));
                continue;
            }
            const auto& c = s.comparison;
            out += fmt::format("| {} | {} | {} | {} | {} | {} |\n", to_string(s.kind), c.common_node_count,
                               opt3(c.rand_index), opt3(c.ari), sizes_text(c.top_sizes_a), sizes_text(c.top_sizes_b));
        }
    }
    return out;
}

std::string report_json(const ComparisonReport& r) {
    const auto& m = r.metadata;
    ojson doc;
    doc["metadata"] = ojson{{"tool_version", m.tool_version},
                            {"labels", m.labels},
                            {"inputs", m.inputs},
                            {"louvain_seed", m.louvain_seed},
                            {"top_k", m.top_k},
                            {"flags", m.flags}};
    ojson stats = ojson::array();
    for (std::size_t i = 0; i < r.corpus_stats.size(); ++i) {
        ojson s = stats_json(r.corpus_stats[i]);
        s["label"] = m.labels[i];
        stats.push_back(std::move(s));
    }
    doc["corpus_stats"] = std::move(stats);

    ojson tl{{"bin_width_seconds", r.timeline.bin_width.count()},
             {"start", r.timeline.bins() ? format_timestamp(r.timeline.start) : ""},
             {"labels", r.timeline.labels},
             {"counts", r.timeline.counts}};
    doc["timeline"] = std::move(tl);

    ojson pairs = ojson::array();
    for (const auto& p : r.pairs) {
        ojson pj;
        pj["a"] = m.labels[p.index_a];
        pj["b"] = m.labels[p.index_b];
        pj["overlap"] = ojson{{"a", side_json(p.overlap.a)}, {"b", side_json(p.overlap.b)}, {"shared_tweets", p.overlap.shared_tweets}};
        ojson nets = ojson::array();
        for (const auto& n : p.networks) {
            ojson bal = ojson::array();
            for (const auto& row : n.balance)
                bal.push_back({{"statistic", row.statistic}, {"a", row.a}, {"b", row.b}, {"ratio", opt_json(row.ratio)}});
            nets.push_back({{"kind", std::string(to_string(n.kind))}, {"a", net_json(n.a)}, {"b", net_json(n.b)}, {"balance", bal}});
        }
        pj["networks"] = std::move(nets);
        ojson ranks = ojson::array();
        for (const auto& s : p.rankings) {
            ojson sj{{"kind", std::string(to_string(s.kind))}};
            if (s.skipped) {
                sj["skipped"] = *s.skipped;
            } else {
                ojson cs = ojson::array();
                for (const auto& c : s.comparisons)
                    cs.push_back({{"measure", std::string(to_string(c.measure))},
                                  {"k", c.k},
                                  {"common_nodes", c.common_nodes},
                                  {"kendall_tau", opt_json(c.kendall_tau)},
                                  {"spearman_rho", opt_json(c.spearman_rho)},
                                  {"band_tau", band_json(c.band_tau)},
                                  {"band_rho", band_json(c.band_rho)}});
                sj["comparisons"] = std::move(cs);
            }
            ranks.push_back(std::move(sj));
        }
        pj["rankings"] = std::move(ranks);
        ojson parts = ojson::array();
        for (const auto& s : p.partitions) {
            ojson sj{{"kind", std::string(to_string(s.kind))}};
            if (s.skipped) {
                sj["skipped"] = *s.skipped;
            } else {
                const auto& c = s.comparison;
                sj["common_nodes"] = c.common_node_count;
                sj["rand_index"] = opt_json(c.rand_index);
                sj["ari"] = opt_json(c.ari);
                sj["top_sizes_a"] = c.top_sizes_a;
                sj["top_sizes_b"] = c.top_sizes_b;
            }
            parts.push_back(std::move(sj));
        }
        pj["partitions"] = std::move(parts);
        pairs.push_back(std::move(pj));
    }
    doc["pairs"] = std::move(pairs);
    return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_report(const ComparisonReport& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& name, const std::string& body) {
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << body;
        if (!out) throw std::runtime_error("write failed: " + path.string());
        written.push_back(path);
    };
    put("report.md", report_markdown(r));
    put("report.json", report_json(r));
    put("corpus_stats.csv", stats_table_csv(r.metadata.labels, r.corpus_stats));
    put("timeline.csv", timeline_csv(r.timeline));
    for (const auto& p : r.pairs) {
        const auto tag = pair_tag(r, p);
        const auto& la = r.metadata.labels[p.index_a];
        const auto& lb = r.metadata.labels[p.index_b];
        put("overlap_" + tag + ".csv", overlap_table_csv(p.overlap));
        for (const auto& n : p.networks)
            put(fmt::format("network_stats_{}_{}.csv", to_string(n.kind), tag), network_stats_csv({la, lb}, {n.a, n.b}));
        put("balance_" + tag + ".csv", balance_csv(p));
        std::vector<RankComparison> rows;
        std::vector<std::string> prefixes;
        for (const auto& s : p.rankings) {
            if (s.skipped) continue;
            for (const auto& c : s.comparisons) {
                rows.push_back(c);
                prefixes.emplace_back(to_string(s.kind));
                put(fmt::format("scatter_{}_{}_{}.csv", to_string(s.kind), to_string(c.measure), tag), export_scatter(c));
            }
        }
        put("centrality_" + tag + ".csv", coefficient_table_csv(rows, "network", prefixes));
        put("partition_" + tag + ".csv", partition_csv(p));
        put("cluster_sizes_" + tag + ".csv", cluster_sizes_csv(p));
    }
    return written;
}

}  // namespace streamcmp
