#include "streamcmp/corpus_stats.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "streamcmp/table.hpp"

namespace streamcmp {

namespace {

using Counter = std::unordered_map<std::string, std::size_t>;

bool ranks_before(const CountedKey& a, const CountedKey& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.key < b.key;
}

std::optional<CountedKey> top_of(const Counter& c) {
    std::optional<CountedKey> best;
    for (const auto& [k, n] : c) {
        CountedKey cand{k, n};
        if (!best || ranks_before(cand, *best)) best = cand;
    }
    return best;
}

std::vector<CountedKey> top_n(const Counter& c, std::size_t n) {
    std::vector<CountedKey> all;
    all.reserve(c.size());
    for (const auto& [k, v] : c) all.push_back({k, v});
    std::sort(all.begin(), all.end(), ranks_before);
    if (all.size() > n) all.resize(n);
    return all;
}

double pct(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::set<std::string> posting_authors(const Corpus& c) {
    std::set<std::string> out;
    for (const auto& r : c) out.insert(r.author_id);
    return out;
}

std::string fmt_key(const std::optional<CountedKey>& k) { return k ? k->key : "-"; }
std::string fmt_count(const std::optional<CountedKey>& k) { return k ? std::to_string(k->count) : "-"; }

std::vector<std::pair<std::string, std::vector<std::string>>> stats_rows(
    const std::vector<CorpusStats>& stats) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    auto add = [&](std::string name, auto getter) {
        std::vector<std::string> vals;
        for (const auto& s : stats) vals.push_back(getter(s));
        rows.emplace_back(std::move(name), std::move(vals));
    };
    auto num = [](std::size_t v) { return std::to_string(v); };
    add("Tweets", [&](const CorpusStats& s) { return num(s.tweets); });
    add("Accounts", [&](const CorpusStats& s) { return num(s.accounts); });
    add("Retweets", [&](const CorpusStats& s) { return num(s.retweets); });
    add("Retweet share (%)", [&](const CorpusStats& s) { return format_pct(100.0 * s.retweet_share); });
    add("Quotes", [&](const CorpusStats& s) { return num(s.quotes); });
    add("Replies", [&](const CorpusStats& s) { return num(s.replies); });
    add("Tweets with hashtags", [&](const CorpusStats& s) { return num(s.tweets_with_hashtags); });
    add("Tweets with URLs", [&](const CorpusStats& s) { return num(s.tweets_with_urls); });
    add("Tweets with mentions", [&](const CorpusStats& s) { return num(s.tweets_with_mentions); });
    add("Most prolific account", [&](const CorpusStats& s) { return fmt_key(s.top_account); });
    add("Tweets by most prolific account", [&](const CorpusStats& s) { return fmt_count(s.top_account); });
    add("Most retweeted tweet", [&](const CorpusStats& s) { return fmt_key(s.top_retweeted); });
    add("Most retweeted tweet count", [&](const CorpusStats& s) { return fmt_count(s.top_retweeted); });
    add("Most replied to tweet", [&](const CorpusStats& s) { return fmt_key(s.top_replied); });
    add("Most replied to tweet count", [&](const CorpusStats& s) { return fmt_count(s.top_replied); });
    add("Most mentioned account", [&](const CorpusStats& s) { return fmt_key(s.top_mentioned); });
    add("Mentions of most mentioned account", [&](const CorpusStats& s) { return fmt_count(s.top_mentioned); });
    add("Mention uses", [&](const CorpusStats& s) { return num(s.mention_uses); });
    add("Unique mentioned accounts", [&](const CorpusStats& s) { return num(s.unique_mentioned_accounts); });
    add("Hashtag uses", [&](const CorpusStats& s) { return num(s.hashtag_uses); });
    add("Unique hashtags", [&](const CorpusStats& s) { return num(s.unique_hashtags); });
    auto tag_at = [](const CorpusStats& s, std::size_t i) -> std::optional<CountedKey> {
        if (i < s.top_hashtags.size()) return s.top_hashtags[i];
        return std::nullopt;
    };
    add("Most used hashtag", [&](const CorpusStats& s) { return fmt_key(tag_at(s, 0)); });
    add("Uses of most used hashtag", [&](const CorpusStats& s) { return fmt_count(tag_at(s, 0)); });
    add("Next most used hashtag", [&](const CorpusStats& s) { return fmt_key(tag_at(s, 1)); });
    add("Uses of next most used hashtag", [&](const CorpusStats& s) { return fmt_count(tag_at(s, 1)); });
    add("URL uses", [&](const CorpusStats& s) { return num(s.url_uses); });
    add("Unique URLs", [&](const CorpusStats& s) { return num(s.unique_urls); });
    add("Most used URL", [&](const CorpusStats& s) { return fmt_key(s.top_url); });
    add("Uses of most used URL", [&](const CorpusStats& s) { return fmt_count(s.top_url); });
    return rows;
}

}  // namespace

std::string format_pct(double pct) { return fmt::format("{:.1f}", pct); }

CorpusStats corpus_stats(const Corpus& corpus, std::size_t hashtag_limit) {
    CorpusStats s;
    Counter by_author, mentioned, retweeted, replied, tags, urls;
    for (const auto& r : corpus) {
        ++s.tweets;
        ++by_author[r.author_id];
        if (r.is_retweet()) {
            ++s.retweets;
            ++retweeted[r.retweet_of->tweet_id];
        }
        if (r.is_quote()) ++s.quotes;
        if (r.is_reply()) {
            ++s.replies;
            ++replied[r.reply_to->tweet_id];
        }
        if (!r.hashtags.empty()) ++s.tweets_with_hashtags;
        if (!r.urls.empty()) ++s.tweets_with_urls;
        if (!r.mentions.empty()) ++s.tweets_with_mentions;
        s.hashtag_uses += r.hashtags.size();
        s.url_uses += r.urls.size();
        s.mention_uses += r.mentions.size();
        for (const auto& t : r.hashtags) ++tags[t];
        for (const auto& u : r.urls) ++urls[u];
        for (const auto& m : r.mentions) ++mentioned[m.account_id];
    }
    s.accounts = by_author.size();
    s.retweet_share = s.tweets == 0 ? 0.0 : static_cast<double>(s.retweets) / static_cast<double>(s.tweets);
    s.unique_hashtags = tags.size();
    s.unique_urls = urls.size();
    s.unique_mentioned_accounts = mentioned.size();
    s.top_account = top_of(by_author);
    s.top_mentioned = top_of(mentioned);
    s.top_retweeted = top_of(retweeted);
    s.top_replied = top_of(replied);
    s.top_hashtags = top_n(tags, hashtag_limit);
    s.top_url = top_of(urls);
    return s;
}

OverlapStats overlap(const Corpus& a, const Corpus& b) {
    std::unordered_set<std::string> ids_a, ids_b;
    for (const auto& r : a) ids_a.insert(r.tweet_id);
    for (const auto& r : b) ids_b.insert(r.tweet_id);
    auto authors_a = posting_authors(a);
    auto authors_b = posting_authors(b);

    OverlapStats o;
    auto fill = [](OverlapSide& side, const Corpus& c, const std::unordered_set<std::string>& other_ids,
                   const std::set<std::string>& own_authors, const std::set<std::string>& other_authors) {
        side.label = c.label();
        side.tweets = c.size();
        for (const auto& r : c)
            if (!other_ids.count(r.tweet_id)) ++side.unique_tweets;
        side.accounts = own_authors.size();
        for (const auto& acc : own_authors)
            if (!other_authors.count(acc)) ++side.unique_accounts;
        side.unique_tweet_pct = pct(side.unique_tweets, side.tweets);
        side.unique_account_pct = pct(side.unique_accounts, side.accounts);
    };
    fill(o.a, a, ids_b, authors_a, authors_b);
    fill(o.b, b, ids_a, authors_b, authors_a);
    o.shared_tweets = o.a.tweets - o.a.unique_tweets;
    return o;
}

TimelineSeries timeline(const std::vector<const Corpus*>& corpora, Seconds bin_width) {
    if (bin_width.count() <= 0) throw std::invalid_argument("timeline: bin width must be positive");
    TimelineSeries t;
    t.bin_width = bin_width;
    std::optional<Timestamp> lo, hi;
    for (const Corpus* c : corpora) {
        t.labels.push_back(c->label());
        if (c->empty()) continue;
        auto first = c->records().front().created_at;
        auto last = c->records().back().created_at;
        if (!lo || first < *lo) lo = first;
        if (!hi || last > *hi) hi = last;
    }
    if (!lo) {
        t.counts.assign(corpora.size(), {});
        return t;
    }
    t.start = floor_to(*lo, bin_width);
    const auto nbins = static_cast<std::size_t>((*hi - t.start) / bin_width) + 1;
    t.counts.assign(corpora.size(), std::vector<std::size_t>(nbins, 0));
    for (std::size_t i = 0; i < corpora.size(); ++i)
        for (const auto& r : *corpora[i]) ++t.counts[i][static_cast<std::size_t>((r.created_at - t.start) / bin_width)];
    return t;
}

std::string stats_table_markdown(const std::vector<std::string>& labels, const std::vector<CorpusStats>& stats) {
    std::string out = "| Property |";
    for (const auto& l : labels) out += " " + md_cell(l) + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < labels.size(); ++i) out += "---:|";
    out += "\n";
    for (const auto& [name, vals] : stats_rows(stats)) {
        out += "| " + name + " |";
        for (const auto& v : vals) out += " " + md_cell(v) + " |";
        out += "\n";
    }
    return out;
}

std::string stats_table_csv(const std::vector<std::string>& labels, const std::vector<CorpusStats>& stats) {
    std::string out = "property";
    for (const auto& l : labels) out += "," + csv_field(l);
    out += "\n";
    for (const auto& [name, vals] : stats_rows(stats)) {
        out += csv_field(name);
        for (const auto& v : vals) out += "," + csv_field(v);
        out += "\n";
    }
    return out;
}

std::string overlap_table_markdown(const OverlapStats& o) {
    std::string out =
        "| Dataset | All Tweets | Unique Tweets | (%) | All Accounts | Unique Accounts | (%) |\n"
        "|---|---:|---:|---:|---:|---:|---:|\n";
    for (const auto* s : {&o.a, &o.b})
        out += fmt::format("| {} | {} | {} | ({}%) | {} | {} | ({}%) |\n", md_cell(s->label), s->tweets,
                           s->unique_tweets, format_pct(s->unique_tweet_pct), s->accounts, s->unique_accounts,
                           format_pct(s->unique_account_pct));
    out += fmt::format("\nShared tweets: {}\n", o.shared_tweets);
    return out;
}

std::string overlap_table_csv(const OverlapStats& o) {
    std::string out = "dataset,all_tweets,unique_tweets,unique_tweets_pct,all_accounts,unique_accounts,unique_accounts_pct,shared_tweets\n";
    for (const auto* s : {&o.a, &o.b})
        out += fmt::format("{},{},{},{},{},{},{},{}\n", csv_field(s->label), s->tweets, s->unique_tweets,
                           format_pct(s->unique_tweet_pct), s->accounts, s->unique_accounts,
                           format_pct(s->unique_account_pct), o.shared_tweets);
    return out;
}

std::string timeline_csv(const TimelineSeries& t) {
    std::string out = "bin_start";
    for (const auto& l : t.labels) out += "," + csv_field(l);
    out += "\n";
    for (std::size_t b = 0; b < t.bins(); ++b) {
        out += format_timestamp(t.bin_start(b));
        for (const auto& c : t.counts) out += "," + std::to_string(c[b]);
        out += "\n";
    }
    return out;
}

}  // namespace streamcmp
