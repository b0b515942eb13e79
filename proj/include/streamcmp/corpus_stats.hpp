#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "streamcmp/corpus.hpp"

namespace streamcmp {

/// Key with its occurrence count, e.g. the most prolific account.
struct CountedKey {
    std::string key;
    std::size_t count = 0;

    bool operator==(const CountedKey&) const = default;
};

struct CorpusStats {
    std::size_t tweets = 0;
    std::size_t accounts = 0;  // posting authors only
    std::size_t retweets = 0;
    double retweet_share = 0.0;
    std::size_t quotes = 0;
    std::size_t replies = 0;
    std::size_t tweets_with_hashtags = 0;
    std::size_t tweets_with_urls = 0;
    std::size_t tweets_with_mentions = 0;
    std::size_t hashtag_uses = 0;
    std::size_t unique_hashtags = 0;
    std::size_t url_uses = 0;  // every occurrence, repeats within a tweet included
    std::size_t unique_urls = 0;
    std::size_t mention_uses = 0;
    std::size_t unique_mentioned_accounts = 0;
    std::optional<CountedKey> top_account;
    std::optional<CountedKey> top_mentioned;
    std::optional<CountedKey> top_retweeted;
    std::optional<CountedKey> top_replied;
    std::vector<CountedKey> top_hashtags;  // up to 10
    std::optional<CountedKey> top_url;
};

/// Dataset statistics. Ties among maxima go to the lexicographically
/// smallest key.
CorpusStats corpus_stats(const Corpus& corpus, std::size_t hashtag_limit = 10);

struct OverlapSide {
    std::string label;
    std::size_t tweets = 0;
    std::size_t unique_tweets = 0;
    double unique_tweet_pct = 0.0;
    std::size_t accounts = 0;
    std::size_t unique_accounts = 0;
    double unique_account_pct = 0.0;
};

struct OverlapStats {
    OverlapSide a;
    OverlapSide b;
    std::size_t shared_tweets = 0;
};

OverlapStats overlap(const Corpus& a, const Corpus& b);

struct TimelineSeries {
    Seconds bin_width{};
    Timestamp start{};  // first bin start
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> counts;  // counts[label][bin]

    std::size_t bins() const { return counts.empty() ? 0 : counts.front().size(); }
    Timestamp bin_start(std::size_t i) const { return start + bin_width * static_cast<long long>(i); }
};

/// Bins post counts on a grid shared by all corpora, anchored at the
/// earliest timestamp floored to `bin_width` and running to the bin holding
/// the latest timestamp.
TimelineSeries timeline(const std::vector<const Corpus*>& corpora, Seconds bin_width);

/// Markdown/CSV "property | A | B" tables.
std::string stats_table_markdown(const std::vector<std::string>& labels,
                                 const std::vector<CorpusStats>& stats);
std::string stats_table_csv(const std::vector<std::string>& labels, const std::vector<CorpusStats>& stats);
std::string overlap_table_markdown(const OverlapStats& o);
std::string overlap_table_csv(const OverlapStats& o);
std::string timeline_csv(const TimelineSeries& t);

std::string format_pct(double pct);

}  // namespace streamcmp
