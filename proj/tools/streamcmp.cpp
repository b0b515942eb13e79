// Command-line front end: one subcommand per pipeline step, plus `compare`
// for the whole run.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "streamcmp/centrality.hpp"
#include "streamcmp/corpus_stats.hpp"
#include "streamcmp/graph_metrics.hpp"
#include "streamcmp/import_v1.hpp"
#include "streamcmp/louvain.hpp"
#include "streamcmp/network.hpp"
#include "streamcmp/partition_compare.hpp"
#include "streamcmp/pipeline.hpp"

namespace fs = std::filesystem;
using namespace streamcmp;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;

struct Common {
    std::vector<std::string> inputs;
    std::string out;
    std::string config;
    std::size_t top_k = 1000;
    std::uint64_t louvain_seed = 42;
    std::string lang;
    std::string keywords;
    std::string scope;
    std::string bin;
    bool directed = false;
    std::string kind = "all";
    std::string measure = "all";
};

// Flags override config values; only flags actually given are applied.
KeyValueConfig merged_config(const Common& c, const CLI::App& cmd) {
    KeyValueConfig cfg = c.config.empty() ? KeyValueConfig{} : KeyValueConfig::load(c.config);
    auto given = [&](const char* name) { return cmd.get_option_no_throw(name) && cmd.count(name) > 0; };
    if (given("--input")) {
        std::string joined;
        for (std::size_t i = 0; i < c.inputs.size(); ++i) joined += (i ? "," : "") + c.inputs[i];
        cfg.set("inputs", joined);
    }
    if (given("--out")) cfg.set("out", c.out);
    if (given("--top-k")) cfg.set("top_k", std::to_string(c.top_k));
    if (given("--louvain-seed")) cfg.set("louvain_seed", std::to_string(c.louvain_seed));
    if (given("--lang")) cfg.set("lang", c.lang);
    if (given("--keywords")) cfg.set("keywords", c.keywords);
    if (given("--scope")) cfg.set("scope", c.scope);
    if (given("--bin")) cfg.set("bin", c.bin);
    if (given("--directed")) cfg.set("directed", c.directed ? "true" : "false");
    return cfg;
}

std::vector<Corpus> load_corpora(const CompareOptions& o) {
    std::vector<Corpus> out;
    for (const auto& path : o.inputs) {
        if (!fs::exists(path)) throw InputError("input file not found: " + path);
        Corpus c = ingest_file(path, fs::path(path).stem().string());
        const auto& st = c.ingest_stats();
        if (st.malformed > 0) std::cerr << fmt::format("warning: {}: {} malformed lines skipped\n", path, st.malformed);
        out.push_back(prepare_corpus(c, o));
    }
    return out;
}

std::vector<NetworkKind> kinds_from(const std::string& s, bool allow_retweet = true) {
    if (s == "all") {
        if (allow_retweet) return {NetworkKind::mention, NetworkKind::reply, NetworkKind::retweet};
        return {NetworkKind::mention, NetworkKind::reply};
    }
    auto k = parse_network_kind(s);
    if (!k) throw std::invalid_argument("unknown network kind: " + s);
    if (!allow_retweet && *k == NetworkKind::retweet)
        throw std::invalid_argument("retweet networks are excluded from centrality comparison");
    return {*k};
}

std::vector<CentralityMeasure> measures_from(const std::string& s) {
    if (s == "all") return {std::begin(kAllMeasures), std::end(kAllMeasures)};
    auto m = parse_centrality_measure(s);
    if (!m) throw std::invalid_argument("unknown centrality measure: " + s);
    return {*m};
}

void write_text(const fs::path& path, const std::string& body) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << body;
}

void add_common(CLI::App* cmd, Common& c, bool inputs_required = true) {
    auto* in = cmd->add_option("--input", c.inputs, "PLX-1 corpus file (repeatable)");
    if (inputs_required) in->required();
    cmd->add_option("--out", c.out, "Output directory or file");
    cmd->add_option("--config", c.config, "Flat key = value config; flags override it");
    cmd->add_option("--lang", c.lang, "Keep only these languages, e.g. en,und");
    cmd->add_option("--keywords", c.keywords, "Keep only records matching any keyword");
    cmd->add_option("--scope", c.scope, "Keyword scope: text or full");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compare parallel social media collections"};
    app.require_subcommand(1);
    Common c;

    auto* simulate = app.add_subcommand("simulate", "Generate a scenario: truth stream plus collector outputs");
    std::string scenario;
    std::optional<std::uint64_t> seed;
    simulate->add_option("--scenario", scenario, "Built-in scenario name");
    simulate->add_option("--config", c.config, "Scenario manifest");
    simulate->add_option("--seed", seed, "Reseed stream and collectors");
    simulate->add_option("--out", c.out, "Output directory")->required();

    auto* import_cmd = app.add_subcommand("import", "Convert platform v1.1 payload lines to PLX-1");
    std::string import_in;
    import_cmd->add_option("--input", import_in, "Newline-delimited v1.1 payloads")->required();
    import_cmd->add_option("--out", c.out, "PLX-1 output file")->required();

    auto* ingest_cmd = app.add_subcommand("ingest", "Validate, deduplicate and filter corpora");
    add_common(ingest_cmd, c);
    std::string anon_key;
    ingest_cmd->add_option("--anonymize-key", anon_key, "Pseudonymize accounts with this HMAC key");

    auto* stats = app.add_subcommand("stats", "Dataset statistics and overlap");
    add_common(stats, c);

    auto* build = app.add_subcommand("build-net", "Write interaction network edge and node lists");
    add_common(build, c);
    build->add_option("--kind", c.kind, "mention, reply, retweet or all");

    auto* netstats = app.add_subcommand("netstats", "Network statistics");
    add_common(netstats, c);
    netstats->add_option("--kind", c.kind, "mention, reply, retweet or all");
    netstats->add_option("--louvain-seed", c.louvain_seed, "Louvain seed");

    auto* cent = app.add_subcommand("centrality", "Centrality scores, and rank comparison for two inputs");
    add_common(cent, c);
    cent->add_option("--kind", c.kind, "mention, reply or all");
    cent->add_option("--measure", c.measure, "degree, betweenness, closeness, eigenvector or all");
    cent->add_option("--top-k", c.top_k, "Top-k list length for comparison");
    cent->add_flag("--directed", c.directed, "Use the directed graph for path and eigenvector measures");

    auto* clusters = app.add_subcommand("clusters", "Louvain partitions, and ARI for two inputs");
    add_common(clusters, c);
    clusters->add_option("--kind", c.kind, "mention, reply, retweet or all");
    clusters->add_option("--louvain-seed", c.louvain_seed, "Louvain seed");

    auto* compare = app.add_subcommand("compare", "Full comparison; writes the report");
    add_common(compare, c, false);
    compare->add_option("--top-k", c.top_k, "Top-k list length for rank comparison");
    compare->add_option("--louvain-seed", c.louvain_seed, "Louvain seed");
    compare->add_option("--bin", c.bin, "Timeline bin width, e.g. 15m");
    compare->add_flag("--directed", c.directed, "Use the directed graph for path and eigenvector measures");

    auto* report = app.add_subcommand("report", "Print a report written by compare");
    std::string report_dir;
    std::string format = "md";
    report->add_option("--dir", report_dir, "Directory given to compare --out")->required();
    report->add_option("--format", format, "md or json")->check(CLI::IsMember({"md", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            if (scenario.empty() == c.config.empty()) throw std::invalid_argument("give exactly one of --scenario or --config");
            Scenario sc = scenario.empty() ? scenario_from_config(KeyValueConfig::load(c.config))
                                           : builtin_scenario(scenario, seed);
            if (seed && scenario.empty()) {
                sc.stream.seed = *seed;
                sc.collector_seed = *seed * 1000 + 1;
            }
            auto res = run_simulate(sc, c.out);
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
            for (const auto& f : res.files) std::cout << f.string() << "\n";
            return 0;
        }
        if (import_cmd->parsed()) {
            std::ifstream in(import_in, std::ios::binary);
            if (!in) throw InputError("input file not found: " + import_in);
            const Corpus corp = import_v1(in, fs::path(import_in).stem().string());
            const auto& st = corp.ingest_stats();
            if (st.malformed > 0) std::cerr << fmt::format("warning: {}: {} malformed lines skipped\n", import_in, st.malformed);
            if (fs::path(c.out).has_parent_path()) fs::create_directories(fs::path(c.out).parent_path());
            std::ofstream out(c.out, std::ios::binary);
            if (!out) throw InputError("cannot write " + c.out);
            write_plx(out, corp);
            std::cout << fmt::format("{} records ({} duplicates, {} malformed) -> {}\n", corp.size(), st.duplicates,
                                     st.malformed, c.out);
            return 0;
        }
        if (report->parsed()) {
            const fs::path path = fs::path(report_dir) / (format == "md" ? "report.md" : "report.json");
            std::ifstream in(path, std::ios::binary);
            if (!in) throw InputError("no report at " + path.string());
            std::cout << in.rdbuf();
            return 0;
        }

        CLI::App* cmd = app.get_subcommands().front();
        const CompareOptions o = compare_options_from_config(merged_config(c, *cmd));

        if (compare->parsed()) {
            const ComparisonReport r = run_compare(o);
            std::cout << fmt::format("wrote report for {} corpora ({} pairs) to {}\n", r.metadata.labels.size(),
                                     r.pairs.size(), o.out_dir.string());
            return 0;
        }

        std::vector<Corpus> corpora = load_corpora(o);

        if (ingest_cmd->parsed()) {
            if (c.out.empty()) throw std::invalid_argument("ingest needs --out");
            for (std::size_t i = 0; i < corpora.size(); ++i) {
                const Corpus& corp = anon_key.empty() ? corpora[i] : anonymize(corpora[i], anon_key);
                const fs::path dest = corpora.size() == 1 && fs::path(c.out).has_extension()
                                          ? fs::path(c.out)
                                          : fs::path(c.out) / (corp.label() + ".plx");
                if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
                std::ofstream out(dest, std::ios::binary);
                if (!out) throw InputError("cannot write " + dest.string());
                write_plx(out, corp);
                std::cout << fmt::format("{}: {} records -> {}\n", corp.label(), corp.size(), dest.string());
            }
            return 0;
        }

        if (stats->parsed()) {
            std::vector<std::string> labels;
            std::vector<CorpusStats> all;
            for (const auto& corp : corpora) {
                labels.push_back(corp.label());
                all.push_back(corpus_stats(corp));
            }
            std::cout << stats_table_markdown(labels, all);
            for (std::size_t i = 0; i < corpora.size(); ++i)
                for (std::size_t j = i + 1; j < corpora.size(); ++j)
                    std::cout << "\n" << overlap_table_markdown(overlap(corpora[i], corpora[j]));
            if (!c.out.empty()) write_text(fs::path(c.out) / "corpus_stats.csv", stats_table_csv(labels, all));
            return 0;
        }

        if (build->parsed()) {
            if (c.out.empty()) throw std::invalid_argument("build-net needs --out");
            for (const auto& corp : corpora)
                for (auto kind : kinds_from(c.kind)) {
                    const auto net = build_network(corp, kind, o.build);
                    const fs::path base = fs::path(c.out) / fmt::format("{}_{}", corp.label(), to_string(kind));
                    fs::create_directories(c.out);
                    std::ofstream edges(base.string() + "_edges.csv", std::ios::binary);
                    std::ofstream nodes(base.string() + "_nodes.csv", std::ios::binary);
                    if (!edges || !nodes) throw InputError("cannot write under " + c.out);
                    write_edge_list(edges, net);
                    write_node_list(nodes, net);
                    std::cout << fmt::format("{} {}: {} nodes, {} edges, {} unresolved\n", corp.label(), to_string(kind),
                                             net.node_count(), net.edge_count(), net.unresolved());
                }
            return 0;
        }

        if (netstats->parsed()) {
            for (auto kind : kinds_from(c.kind)) {
                std::vector<std::string> cols;
                std::vector<NetworkStats> all;
                for (const auto& corp : corpora) {
                    cols.push_back(corp.label());
                    all.push_back(network_stats(build_network(corp, kind, o.build), o.louvain_seed));
                }
                std::cout << fmt::format("## {} network\n\n", to_string(kind)) << network_stats_markdown(cols, all) << "\n";
                if (!c.out.empty())
                    write_text(fs::path(c.out) / fmt::format("network_stats_{}.csv", to_string(kind)),
                               network_stats_csv(cols, all));
            }
            return 0;
        }

        if (cent->parsed()) {
            const auto measures = measures_from(c.measure);
            for (auto kind : kinds_from(c.kind, false)) {
                std::vector<std::vector<CentralityVector>> per;
                for (const auto& corp : corpora) {
                    const auto net = build_network(corp, kind, o.build);
                    std::vector<CentralityVector> vs;
                    if (!net.empty())
                        for (auto m : measures) vs.push_back(centrality(net, m, o.centrality));
                    if (!c.out.empty())
                        for (const auto& v : vs) {
                            std::string body = "node,score\n";
                            for (Eigen::Index i = 0; i < v.scores.size(); ++i)
                                body += fmt::format("{},{}\n", v.nodes[static_cast<std::size_t>(i)], v.scores[i]);
                            write_text(fs::path(c.out) / fmt::format("{}_{}_{}.csv", corp.label(), to_string(kind),
                                                                     to_string(v.measure)),
                                       body);
                        }
                    per.push_back(std::move(vs));
                }
                if (per.size() >= 2) {
                    if (per[0].empty() || per[1].empty()) {
                        std::cout << fmt::format("{}: skipped, empty network\n", to_string(kind));
                        continue;
                    }
                    std::vector<RankComparison> rows;
                    for (std::size_t m = 0; m < measures.size(); ++m)
                        rows.push_back(compare_rankings(per[0][m], per[1][m], o.top_k));
                    std::cout << coefficient_table_csv(rows, "network",
                                                       std::vector<std::string>(rows.size(), std::string(to_string(kind))));
                } else {
                    for (const auto& v : per[0]) {
                        const auto order = rank_order(v);
                        std::cout << fmt::format("{} {} top:", to_string(kind), to_string(v.measure));
                        for (std::size_t i = 0; i < std::min<std::size_t>(5, order.size()); ++i)
                            std::cout << " " << v.nodes[order[i]];
                        std::cout << "\n";
                    }
                }
            }
            return 0;
        }

        if (clusters->parsed()) {
            for (auto kind : kinds_from(c.kind)) {
                std::vector<Partition> parts;
                for (const auto& corp : corpora) {
                    const auto net = build_network(corp, kind, o.build);
                    Partition p = net.empty() ? Partition{} : louvain(net, o.louvain_seed);
                    std::cout << fmt::format("{} {}: {} clusters, modularity {:.4f}\n", corp.label(), to_string(kind),
                                             p.cluster_count(), p.modularity);
                    if (!c.out.empty()) {
                        fs::create_directories(c.out);
                        std::ofstream out(fs::path(c.out) / fmt::format("{}_{}_partition.csv", corp.label(), to_string(kind)),
                                          std::ios::binary);
                        write_partition_csv(out, p);
                    }
                    parts.push_back(std::move(p));
                }
                if (parts.size() >= 2) {
                    const auto cmp = compare_partitions(parts[0], parts[1]);
                    std::cout << fmt::format("{} ARI over {} common nodes: {}\n", to_string(kind), cmp.common_node_count,
                                             cmp.ari ? fmt::format("{:.6f}", *cmp.ari) : "undefined");
                }
            }
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConfigError& e) {
        std::cerr << "error: config " << e.what() << "\n";
        return kExitInput;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
