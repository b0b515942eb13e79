#include "streamcmp/pipeline.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

#include "streamcmp/graph_metrics.hpp"
#include "streamcmp/louvain.hpp"

namespace streamcmp {

namespace {

constexpr NetworkKind kKinds[] = {NetworkKind::mention, NetworkKind::reply, NetworkKind::retweet};
constexpr NetworkKind kRankedKinds[] = {NetworkKind::mention, NetworkKind::reply};

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

// Everything computed once per corpus and kind.
struct KindResult {
    InteractionNetwork net;
    NetworkStats stats;
    Partition partition;
    std::vector<CentralityVector> centralities;
};

std::vector<std::string> unique_labels(std::vector<std::string> labels) {
    std::set<std::string> seen;
    for (auto& l : labels) {
        std::string base = l.empty() ? "corpus" : l;
        std::string cand = base;
        for (int i = 2; seen.count(cand); ++i) cand = fmt::format("{}-{}", base, i);
        seen.insert(cand);
        l = cand;
    }
    return labels;
}

}  // namespace

CompareOptions compare_options_from_config(const KeyValueConfig& cfg) {
    static const std::set<std::string> known = {
        "inputs", "labels", "out", "top_k", "louvain_seed", "lang", "keywords", "scope", "bin", "directed",
        "allow_self_loops", "include_retweet_mentions", "include_quotes", "count_per_tweet"};
    cfg.check_keys([](const std::string& k) { return known.count(k) != 0; });
    CompareOptions o;
    o.inputs = split(cfg.get_or("inputs", ""), ',');
    o.labels = split(cfg.get_or("labels", ""), ',');
    if (auto v = cfg.get("out")) o.out_dir = *v;
    const long long k = cfg.get_int("top_k", 1000);
    if (k < 1) throw ConfigError("top_k", "must be >= 1");
    o.top_k = static_cast<std::size_t>(k);
    o.louvain_seed = static_cast<std::uint64_t>(cfg.get_int("louvain_seed", 42));
    o.langs = split(cfg.get_or("lang", ""), ',');
    o.keywords = split(cfg.get_or("keywords", ""), ',');
    if (auto v = cfg.get("scope")) {
        auto s = parse_match_scope(*v);
        if (!s) throw ConfigError("scope", "expected text or full");
        o.scope = *s;
    }
    if (auto v = cfg.get("bin")) {
        auto d = parse_duration(*v);
        if (!d || d->count() <= 0) throw ConfigError("bin", "expected a positive duration");
        o.bin = *d;
    }
    o.centrality.directed = cfg.get_bool("directed", false);
    o.build.allow_self_loops = cfg.get_bool("allow_self_loops", false);
    o.build.include_retweet_mentions = cfg.get_bool("include_retweet_mentions", true);
    o.build.include_quotes = cfg.get_bool("include_quotes", false);
    o.build.count_per_tweet = cfg.get_bool("count_per_tweet", false);
    return o;
}

std::map<std::string, std::string> describe(const CompareOptions& o) {
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    return {{"lang", o.langs.empty() ? "all" : join(o.langs)},
            {"keywords", o.keywords.empty() ? "none" : join(o.keywords)},
            {"scope", std::string(to_string(o.scope))},
            {"bin", format_duration(o.bin)},
            {"directed", b(o.centrality.directed)},
            {"allow_self_loops", b(o.build.allow_self_loops)},
            {"include_retweet_mentions", b(o.build.include_retweet_mentions)},
            {"include_quotes", b(o.build.include_quotes)},
            {"count_per_tweet", b(o.build.count_per_tweet)}};
}

Corpus prepare_corpus(const Corpus& corpus, const CompareOptions& o) {
    Corpus c = corpus;
    if (!o.langs.empty()) c = filter_by_lang(c, std::set<std::string>(o.langs.begin(), o.langs.end())).relabeled(corpus.label());
    if (!o.keywords.empty()) c = filter_by_keywords(c, o.keywords, o.scope);
    return c;
}

ComparisonReport build_report(const std::vector<Corpus>& corpora, const CompareOptions& o,
                              const std::vector<std::string>& inputs) {
    if (corpora.size() < 2) throw std::invalid_argument("compare needs at least two corpora");
    ComparisonReport r;
    r.metadata.louvain_seed = o.louvain_seed;
    r.metadata.top_k = o.top_k;
    r.metadata.inputs = inputs;
    r.metadata.flags = describe(o);
    std::vector<std::string> labels;
    for (const auto& c : corpora) labels.push_back(c.label());
    r.metadata.labels = unique_labels(labels);

    std::vector<const Corpus*> ptrs;
    for (const auto& c : corpora) {
        r.corpus_stats.push_back(corpus_stats(c));
        ptrs.push_back(&c);
    }
    r.timeline = timeline(ptrs, o.bin);
    r.timeline.labels = r.metadata.labels;

    // Per corpus and kind; each task fills its own slot, so the merge order
    // is fixed.
    const std::size_t kinds = std::size(kKinds);
    std::vector<KindResult> results(corpora.size() * kinds);
    for (std::size_t t = 0; t < results.size(); ++t) {
        const Corpus& c = corpora[t / kinds];
        const NetworkKind kind = kKinds[t % kinds];
        auto& res = results[t];
        res.net = build_network(c, kind, o.build);
        res.stats = network_stats(res.net, o.louvain_seed, &res.partition);
        if (kind != NetworkKind::retweet && !res.net.empty()) res.centralities = all_centralities(res.net, o.centrality);
    }
    auto at = [&](std::size_t corpus, std::size_t kind) -> const KindResult& { return results[corpus * kinds + kind]; };

    for (std::size_t i = 0; i < corpora.size(); ++i) {
        for (std::size_t j = i + 1; j < corpora.size(); ++j) {
            PairReport p;
            p.index_a = i;
            p.index_b = j;
            p.overlap = overlap(corpora[i], corpora[j]);
            p.overlap.a.label = r.metadata.labels[i];
            p.overlap.b.label = r.metadata.labels[j];
            for (std::size_t k = 0; k < kinds; ++k) {
                const auto& a = at(i, k);
                const auto& b = at(j, k);
                p.networks.push_back({kKinds[k], a.stats, b.stats, balance_rows(a.stats, b.stats)});

                auto empty_reason = [&]() -> std::optional<std::string> {
                    for (auto [res, idx] : {std::pair{&a, i}, std::pair{&b, j}})
                        if (res->net.empty())
                            return fmt::format("empty {} network in {}", to_string(kKinds[k]), r.metadata.labels[idx]);
                    return std::nullopt;
                };
                const auto reason = empty_reason();

                if (kKinds[k] != NetworkKind::retweet) {
                    RankSection rs;
                    rs.kind = kKinds[k];
                    rs.skipped = reason;
                    if (!reason)
                        for (std::size_t m = 0; m < a.centralities.size(); ++m)
                            rs.comparisons.push_back(compare_rankings(a.centralities[m], b.centralities[m], o.top_k));
                    p.rankings.push_back(std::move(rs));
                }

                PartitionSection ps;
                ps.kind = kKinds[k];
                ps.skipped = reason;
                if (!reason) ps.comparison = compare_partitions(a.partition, b.partition);
                p.partitions.push_back(std::move(ps));
            }
            r.pairs.push_back(std::move(p));
        }
    }
    return r;
}

ComparisonReport run_compare(const CompareOptions& o) {
    if (o.inputs.size() < 2) throw std::invalid_argument("compare needs at least two --input files");
    if (o.out_dir.empty()) throw std::invalid_argument("compare needs --out");
    if (!o.labels.empty() && o.labels.size() != o.inputs.size())
        throw std::invalid_argument("labels must match inputs one to one");
    std::vector<Corpus> corpora;
    for (std::size_t i = 0; i < o.inputs.size(); ++i) {
        const auto& path = o.inputs[i];
        if (!std::filesystem::exists(path)) throw InputError("input file not found: " + path);
        const std::string label = o.labels.empty() ? std::filesystem::path(path).stem().string() : o.labels[i];
        try {
            corpora.push_back(prepare_corpus(ingest_file(path, label), o));
        } catch (const IngestError& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    ComparisonReport r = build_report(corpora, o, o.inputs);
    write_report(r, o.out_dir);
    return r;
}

SimulateResult run_simulate(const Scenario& sc, const std::filesystem::path& out_dir) {
    SimulateResult res;
    std::filesystem::create_directories(out_dir);
    const ScenarioRun run = run_scenario(sc);
    if (run.truth.empty()) res.warnings.push_back("stream is empty (zero duration or zero posts); writing empty files");
    auto put = [&](const std::string& name, auto&& writer) {
        const auto path = out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError("cannot write " + path.string());
        writer(out);
        if (!out) throw InputError("write failed: " + path.string());
        res.files.push_back(path);
    };
    put("truth.plx", [&](std::ostream& out) { write_plx(out, run.truth); });
    for (std::size_t i = 0; i < sc.profiles.size(); ++i)
        put(sc.profiles[i].name + ".plx", [&](std::ostream& out) { write_plx(out, run.collected[i].emitted); });
    put("manifest.conf", [&](std::ostream& out) {
        out << "# " << sc.name << "\n";
        scenario_to_config(sc).write(out);
    });
    return res;
}

}  // namespace streamcmp
