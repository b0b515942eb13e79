#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "streamcmp/corpus_stats.hpp"
#include "streamcmp/simulator.hpp"

using namespace streamcmp;

namespace {

Corpus three_records() {
    auto plain = oracle::post("1", "A", 0);
    plain.hashtags = {"qanda", "auspol"};
    plain.urls = {"https://x.org/a", "https://x.org/a"};
    plain.mentions = {{"C", "sn_C"}};
    auto rt = oracle::post("2", "B", 10);
    rt.retweet_of = TweetRef{"1", "A"};
    rt.mentions = {{"A", "sn_A"}};
    rt.hashtags = {"qanda"};
    auto reply = oracle::post("3", "A", 20);
    reply.reply_to = TweetRef{"1", "A"};
    return Corpus("c", {plain, rt, reply});
}

std::vector<TweetRecord> dense_stream(int n, int step) {
    std::vector<TweetRecord> out;
    for (int i = 0; i < n; ++i) out.push_back(oracle::post(fmt::format("{:06d}", i), fmt::format("u{}", i % 37), i * step));
    return out;
}

}  // namespace

TEST(CorpusStats, ThreeRecordExample) {
    auto s = corpus_stats(three_records());
    EXPECT_EQ(s.tweets, 3u);
    EXPECT_EQ(s.retweets, 1u);
    EXPECT_EQ(s.replies, 1u);
    EXPECT_EQ(s.quotes, 0u);
    EXPECT_EQ(s.accounts, 2u);  // C is only mentioned
    EXPECT_EQ(s.url_uses, 2u);
    EXPECT_EQ(s.unique_urls, 1u);
    EXPECT_EQ(s.tweets_with_urls, 1u);
    EXPECT_EQ(s.hashtag_uses, 3u);
    EXPECT_EQ(s.unique_hashtags, 2u);
    EXPECT_EQ(s.mention_uses, 2u);
    EXPECT_EQ(s.unique_mentioned_accounts, 2u);
    EXPECT_EQ(s.top_account, (CountedKey{"A", 2}));
    EXPECT_EQ(s.top_mentioned, (CountedKey{"A", 1}));  // tie A/C goes to A
    EXPECT_EQ(s.top_retweeted, (CountedKey{"1", 1}));
    EXPECT_EQ(s.top_replied, (CountedKey{"1", 1}));
    ASSERT_EQ(s.top_hashtags.size(), 2u);
    EXPECT_EQ(s.top_hashtags[0], (CountedKey{"qanda", 2}));
    EXPECT_EQ(s.top_url, (CountedKey{"https://x.org/a", 2}));
}

TEST(CorpusStats, EmptyCorpus) {
    auto s = corpus_stats(Corpus{});
    EXPECT_EQ(s.tweets, 0u);
    EXPECT_EQ(s.accounts, 0u);
    EXPECT_EQ(s.retweet_share, 0.0);
    EXPECT_FALSE(s.top_account);
    EXPECT_FALSE(s.top_mentioned);
    EXPECT_FALSE(s.top_retweeted);
    EXPECT_FALSE(s.top_replied);
    EXPECT_FALSE(s.top_url);
    EXPECT_TRUE(s.top_hashtags.empty());
}

TEST(CorpusStats, QandaPart1RetweetShare) {
    Corpus c = generate_stream(oracle::qanda_part1_spec());
    auto s = corpus_stats(c);
    EXPECT_EQ(s.tweets, 27389u);
    EXPECT_EQ(s.retweets, 14191u);
    EXPECT_EQ(s.accounts, 7057u);
    EXPECT_EQ(format_pct(100.0 * s.retweet_share), "51.8");
}

TEST(CorpusStats, InvariantsOnSimulatedCorpora) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        StreamSpec spec;
        spec.seed = seed;
        spec.exact_posts = 3000;
        spec.accounts = 800;
        spec.communities = seed == 2 ? 5 : 0;
        Corpus c = generate_stream(spec);
        auto s = corpus_stats(c);
        std::map<std::string, std::size_t> per_author;
        for (const auto& r : c) ++per_author[r.author_id];
        std::size_t sum = 0, mx = 0;
        for (const auto& [a, n] : per_author) {
            sum += n;
            mx = std::max(mx, n);
        }
        EXPECT_EQ(sum, s.tweets);
        ASSERT_TRUE(s.top_account);
        EXPECT_EQ(s.top_account->count, mx);
        EXPECT_LE(s.retweets + s.quotes, s.tweets);
        EXPECT_LE(s.unique_hashtags, s.hashtag_uses);
        EXPECT_LE(s.unique_urls, s.url_uses);
        EXPECT_LE(s.unique_mentioned_accounts, s.mention_uses);
        EXPECT_LE(s.tweets_with_hashtags, s.tweets);
        EXPECT_LE(s.top_hashtags.size(), 10u);
    }
}

TEST(Overlap, IdenticalCorpora) {
    Corpus c = three_records();
    auto o = overlap(c, c);
    EXPECT_EQ(o.a.unique_tweets, 0u);
    EXPECT_EQ(o.b.unique_tweets, 0u);
    EXPECT_EQ(o.shared_tweets, 3u);
    EXPECT_EQ(o.a.unique_accounts, 0u);
}

TEST(Overlap, DisjointCorpora) {
    Corpus a("a", {oracle::post("1", "A"), oracle::post("2", "B")});
    Corpus b("b", {oracle::post("3", "A"), oracle::post("4", "C"), oracle::post("5", "D")});
    auto o = overlap(a, b);
    EXPECT_EQ(o.shared_tweets, 0u);
    EXPECT_EQ(o.a.unique_tweets, 2u);
    EXPECT_EQ(o.b.unique_tweets, 3u);
    EXPECT_EQ(o.a.unique_accounts, 1u);
    EXPECT_EQ(o.b.unique_accounts, 2u);
    EXPECT_DOUBLE_EQ(o.a.unique_account_pct, 50.0);
    EXPECT_EQ(format_pct(o.b.unique_account_pct), "66.7");
}

TEST(Overlap, ProperSubsetDifferingBy12) {
    StreamSpec spec;
    spec.seed = 12;
    spec.keywords = {"afl"};
    spec.exact_posts = 5000;
    Corpus b = generate_stream(spec, "rapid2");
    const auto& r = b.records();
    // An outage covering exactly twelve consecutive posts.
    std::size_t k = 100;
    while (!(r[k - 1].created_at < r[k].created_at && r[k + 11].created_at < r[k + 12].created_at)) ++k;
    CollectorProfile p;
    p.name = "rapid1";
    p.keywords = {"afl"};
    p.outages = {{r[k].created_at, r[k + 12].created_at - r[k].created_at}};
    Corpus a = apply_collector(b, p, 1).corpus;
    auto o = overlap(a, b);
    EXPECT_EQ(b.size() - a.size(), 12u);
    EXPECT_EQ(o.a.unique_tweets, 0u);
    EXPECT_EQ(o.b.unique_tweets, 12u);
    EXPECT_EQ(o.shared_tweets, a.size());
}

TEST(Overlap, SharedIsSymmetricAndSidesAddUp) {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<TweetRecord> xa, xb;
        for (int i = 0; i < 60; ++i) {
            auto r = oracle::post(std::to_string(i), fmt::format("u{}", rng.below(15)), i);
            if (rng.bernoulli(0.7)) xa.push_back(r);
            if (rng.bernoulli(0.7)) xb.push_back(r);
        }
        Corpus a("a", xa), b("b", xb);
        auto ab = overlap(a, b), ba = overlap(b, a);
        EXPECT_EQ(ab.shared_tweets, ba.shared_tweets);
        EXPECT_EQ(ab.a.unique_tweets + ab.shared_tweets, a.size());
        EXPECT_EQ(ab.b.unique_tweets + ab.shared_tweets, b.size());
        if (!xa.empty()) EXPECT_NEAR(ab.a.unique_tweet_pct, 100.0 * ab.a.unique_tweets / a.size(), 0.05);
    }
}

TEST(Timeline, HourBinsExample) {
    Corpus c("c", {oracle::post("1", "A", 0), oracle::post("2", "A", 600), oracle::post("3", "A", 1200),
                   oracle::post("4", "A", 4200)});
    auto t = timeline({&c}, Seconds{3600});
    ASSERT_EQ(t.bins(), 2u);
    EXPECT_EQ(t.counts[0], (std::vector<std::size_t>{3, 1}));
    EXPECT_EQ(t.start, oracle::at(0));  // base time is on the hour
}

TEST(Timeline, EmptyCorpusGivesEmptySeries) {
    Corpus c;
    auto t = timeline({&c}, Seconds{900});
    EXPECT_EQ(t.bins(), 0u);
    EXPECT_THROW(timeline({&c}, Seconds{0}), std::invalid_argument);
}

TEST(Timeline, SharedGridAcrossCorpora) {
    Corpus a("a", {oracle::post("1", "A", 1000)});
    Corpus b("b", {oracle::post("2", "A", 4000), oracle::post("3", "A", 100)});
    auto t = timeline({&a, &b}, Seconds{900});
    EXPECT_EQ(t.labels, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(t.bins(), 5u);
    EXPECT_EQ(t.counts[0], (std::vector<std::size_t>{0, 1, 0, 0, 0}));
    EXPECT_EQ(t.counts[1], (std::vector<std::size_t>{1, 0, 0, 0, 1}));
}

TEST(Timeline, OutageGapsBecomeZeroBins) {
    // One post every 20 s for ten hours, two outages of 110 and 96 minutes.
    Corpus truth("truth", dense_stream(1800, 20));
    CollectorProfile p;
    p.name = "tweepy";
    p.keywords = {"hello"};
    p.outages = {{oracle::at(3600 * 2), Seconds{110 * 60}}, {oracle::at(3600 * 6), Seconds{96 * 60}}};
    Corpus got = apply_collector(truth, p, 9).corpus;
    auto t = timeline({&truth, &got}, Seconds{60});
    ASSERT_EQ(t.bins(), 600u);
    std::vector<std::size_t> zero_bins;
    for (std::size_t b = 0; b < t.bins(); ++b)
        if (t.counts[1][b] == 0) zero_bins.push_back(b);
    std::vector<std::size_t> expected;
    for (std::size_t b = 120; b < 230; ++b) expected.push_back(b);
    for (std::size_t b = 360; b < 456; ++b) expected.push_back(b);
    EXPECT_EQ(zero_bins, expected);
    for (std::size_t i = 0; i < 2; ++i) {
        std::size_t sum = 0;
        for (auto n : t.counts[i]) sum += n;
        EXPECT_EQ(sum, i == 0 ? truth.size() : got.size());
    }
}

TEST(Tables, MarkdownAndCsvShapes) {
    auto s = corpus_stats(three_records());
    auto md = stats_table_markdown({"A", "B"}, {s, s});
    EXPECT_EQ(md.rfind("| Property | A | B |", 0), 0u);
    auto csv = stats_table_csv({"A", "B"}, {s, s});
    EXPECT_EQ(csv.rfind("property,A,B\n", 0), 0u);
    auto c = three_records();
    auto o = overlap(c, c);
    EXPECT_NE(overlap_table_markdown(o).find("Shared tweets: 3"), std::string::npos);
    auto t = timeline({&c}, Seconds{60});
    EXPECT_EQ(timeline_csv(t), "bin_start,c\n2018-11-08T09:00:00Z,3\n");
}
