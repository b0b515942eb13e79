#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "streamcmp/corpus.hpp"
#include "streamcmp/corpus_stats.hpp"
#include "streamcmp/import_v1.hpp"
#include "streamcmp/simulator.hpp"

using namespace streamcmp;

namespace {

std::string plx(const std::vector<TweetRecord>& recs) {
    std::ostringstream out;
    write_plx(out, recs);
    return out.str();
}

Corpus ingest_string(const std::string& s, const std::string& label = "t") {
    std::istringstream in(s);
    return ingest(in, label);
}

std::vector<std::string> ids(const Corpus& c) {
    std::vector<std::string> out;
    for (const auto& r : c) out.push_back(r.tweet_id);
    return out;
}

TweetRecord with_lang(TweetRecord r, std::string lang) {
    r.lang = std::move(lang);
    return r;
}

// Random records exercising every field, for property checks.
std::vector<TweetRecord> random_records(Rng& rng, int n) {
    static const std::vector<std::string> langs{"en", "ja", "und", "fr"};
    static const std::vector<std::string> words{"afl", "qanda", "footy", "vote", "grand", "final", "news"};
    std::vector<TweetRecord> out;
    for (int i = 0; i < n; ++i) {
        auto r = oracle::post(fmt::format("t{:05d}", i), fmt::format("u{}", rng.below(12)), rng.below(3600));
        r.lang = langs[rng.below(langs.size())];
        r.text = words[rng.below(words.size())] + " " + words[rng.below(words.size())];
        if (rng.bernoulli(0.3)) r.hashtags.push_back(words[rng.below(words.size())]);
        if (rng.bernoulli(0.3)) r.urls.push_back("https://www." + words[rng.below(words.size())] + ".com.au/x");
        if (rng.bernoulli(0.3)) {
            auto m = fmt::format("u{}", rng.below(12));
            r.mentions.push_back({m, "sn_" + m});
        }
        if (rng.bernoulli(0.1)) r.raw_extra["source"] = words[rng.below(words.size())];
        if (i > 0) {
            const double k = rng.uniform();
            auto target = out[rng.below(out.size())];
            if (k < 0.3) r.retweet_of = TweetRef{target.tweet_id, target.author_id};
            else if (k < 0.4) r.quote_of = TweetRef{target.tweet_id, target.author_id};
            else if (k < 0.5) r.reply_to = TweetRef{target.tweet_id, target.author_id};
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

TEST(Ingest, RepeatedIdKeepsFirstAndCountsDuplicate) {
    auto a = oracle::post("1", "A", 5);
    auto b = oracle::post("2", "B", 1);
    auto a2 = a;
    a2.text = "second copy";
    Corpus c = ingest_string(plx({a, b, a2}));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.ingest_stats().duplicates, 1u);
    EXPECT_EQ(c.ingest_stats().parsed, 3u);
    EXPECT_EQ(ids(c), (std::vector<std::string>{"2", "1"}));
    EXPECT_EQ(c.records()[1].text, "hello 1");
}

TEST(Ingest, EmptyStreamGivesEmptyCorpus) {
    Corpus c = ingest_string("");
    EXPECT_TRUE(c.empty());
    EXPECT_EQ(c.ingest_stats(), IngestStats{});
    EXPECT_EQ(c.label(), "t");
}

TEST(Ingest, MalformedLinesAreCountedNotFatal) {
    std::string s = plx({oracle::post("1", "A")});
    s += "not json\n";
    s += "{\"id\":\"\",\"author_id\":\"A\",\"created_at\":\"2018-11-08T09:00:00Z\"}\n";
    s += "{\"id\":\"3\",\"author_id\":\"A\",\"created_at\":\"yesterday\"}\n";
    s += "{\"id\":\"4\",\"author_id\":\"A\",\"created_at\":\"2018-11-08T09:00:00Z\",\"hashtags\":\"x\"}\n";
    s += "\n   \n";
    s += "{\"id\":5,\"author_id\":77,\"created_at\":\"2018-11-08T09:00:00Z\"}\n";
    Corpus c = ingest_string(s);
    EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(c.ingest_stats().lines, 6u);
    EXPECT_EQ(c.ingest_stats().malformed, 4u);
    EXPECT_EQ(c.records()[1].tweet_id, "5");
    EXPECT_EQ(c.records()[1].author_id, "77");
    EXPECT_EQ(c.records()[1].lang, "und");
}

TEST(Ingest, MissingFileThrows) {
    EXPECT_THROW(ingest_file("/nonexistent/dir/x.plx", "x"), IngestError);
}

TEST(Ingest, SortsByTimeThenId) {
    Corpus c("c", {oracle::post("b", "A", 10), oracle::post("c", "A", 0), oracle::post("a", "A", 10)});
    EXPECT_EQ(ids(c), (std::vector<std::string>{"c", "a", "b"}));
}

TEST(Ingest, HashtagsAreCaseFoldedAndUnknownKeysKept) {
    auto r = parse_plx_line(
        R"({"id":"9","author_id":"A","created_at":"2018-11-08T09:00:00.250Z","hashtags":["QandA","AFL"],"source":"web"})");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->hashtags, (std::vector<std::string>{"qanda", "afl"}));
    EXPECT_EQ(r->raw_extra["source"], "web");
    EXPECT_EQ(r->created_at, oracle::at(0));
}

TEST(Ingest, RoundTripIsIdempotent) {
    Rng rng(11);
    Corpus c("rt", random_records(rng, 300));
    std::ostringstream out;
    write_plx(out, c);
    Corpus again = ingest_string(out.str(), "rt");
    EXPECT_EQ(again.records(), c.records());
    std::ostringstream out2;
    write_plx(out2, again);
    EXPECT_EQ(out.str(), out2.str());
}

TEST(Ingest, QandaPart1ScaleFixture) {
    Corpus truth = generate_stream(oracle::qanda_part1_spec());
    std::ostringstream out;
    write_plx(out, truth);
    Corpus c = ingest_string(out.str(), "twarc");
    EXPECT_EQ(c.ingest_stats().lines, 27389u);
    EXPECT_EQ(c.size(), 27389u);
    std::set<std::string> authors;
    for (const auto& r : c) authors.insert(r.author_id);
    EXPECT_EQ(authors.size(), 7057u);
}

TEST(Classification, RetweetWinsOverQuote) {
    auto r = oracle::post("1", "A");
    r.retweet_of = TweetRef{"0", "B"};
    r.quote_of = TweetRef{"0", "B"};
    EXPECT_TRUE(r.is_retweet());
    EXPECT_FALSE(r.is_quote());
    Corpus c("c", {r});
    auto s = corpus_stats(c);
    EXPECT_EQ(s.retweets, 1u);
    EXPECT_EQ(s.quotes, 0u);
}

TEST(Classification, ReplyToOffCorpusTweetIsReply) {
    auto r = oracle::post("1", "A");
    r.reply_to = TweetRef{"999", "C"};
    EXPECT_TRUE(r.is_reply());
    EXPECT_EQ(corpus_stats(Corpus("c", {r})).replies, 1u);
    r.reply_to = TweetRef{"", "C"};
    EXPECT_FALSE(r.is_reply());
}

TEST(Classification, CategoriesAgreeWithStats) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Corpus c("c", random_records(rng, 80));
        std::size_t rt = 0, qt = 0, rp = 0;
        for (const auto& r : c) {
            rt += r.is_retweet();
            qt += r.is_quote();
            rp += r.is_reply();
        }
        auto s = corpus_stats(c);
        EXPECT_EQ(s.retweets, rt);
        EXPECT_EQ(s.quotes, qt);
        EXPECT_EQ(s.replies, rp);
    }
}

TEST(LangFilter, KeepsAllowedCodes) {
    std::vector<TweetRecord> recs;
    int i = 0;
    for (auto [lang, n] : std::vector<std::pair<std::string, int>>{{"en", 3}, {"jp", 2}, {"und", 1}})
        for (int k = 0; k < n; ++k, ++i) recs.push_back(with_lang(oracle::post(std::to_string(i), "A", i), lang));
    Corpus c("twarc", recs);
    Corpus f = filter_by_lang(c, {"en", "und"});
    EXPECT_EQ(f.size(), 4u);
    EXPECT_EQ(f.label(), "twarc-lang");
    for (const auto& r : f) EXPECT_NE(r.lang, "jp");
}

TEST(LangFilter, AllEnglishIsIdentity) {
    Corpus c("c", {with_lang(oracle::post("1", "A"), "en"), with_lang(oracle::post("2", "B"), "en")});
    EXPECT_EQ(filter_by_lang(c, {"en", "und"}).records(), c.records());
}

TEST(LangFilter, EmptyAllowedSetRejected) {
    EXPECT_THROW(filter_by_lang(Corpus{}, {}), std::invalid_argument);
}

TEST(LangFilter, AflStyleMixRetains64Percent) {
    StreamSpec s;
    s.seed = 77;
    s.keywords = {"afl"};
    s.exact_posts = 10000;
    s.lang_mix = {{"en", 0.52}, {"jp", 0.36}, {"und", 0.12}};
    Corpus truth = generate_stream(s);
    std::size_t expected = 0;
    for (const auto& r : truth) expected += (r.lang == "en" || r.lang == "und");
    Corpus f = filter_by_lang(truth, {"en", "und"});
    EXPECT_EQ(f.size(), expected);
    EXPECT_NEAR(static_cast<double>(f.size()) / static_cast<double>(truth.size()), 0.64, 0.015);
}

TEST(KeywordFilter, UrlOnlyMatchDependsOnScope) {
    auto r = oracle::post("1", "A");
    r.text = "what a game tonight";
    r.urls = {"https://www.afl.com.au/news/123"};
    Corpus c("c", {r});
    EXPECT_EQ(filter_by_keywords(c, {"afl"}, MatchScope::full_record).size(), 1u);
    EXPECT_EQ(filter_by_keywords(c, {"afl"}, MatchScope::text_fields).size(), 0u);
}

TEST(KeywordFilter, TextMatchKeptUnderBothScopesCaseInsensitive) {
    auto r = oracle::post("1", "A");
    r.text = "Go the AFLW";
    Corpus c("c", {r});
    EXPECT_EQ(filter_by_keywords(c, {"afl"}, MatchScope::full_record).size(), 1u);
    EXPECT_EQ(filter_by_keywords(c, {"Afl"}, MatchScope::text_fields).size(), 1u);
}

TEST(KeywordFilter, EveryTextHasKeywordIsIdentity) {
    std::vector<TweetRecord> recs;
    for (int i = 0; i < 5; ++i) {
        auto r = oracle::post(std::to_string(i), "A", i);
        r.text = "watching #qanda now";
        recs.push_back(r);
    }
    Corpus c("c", recs);
    EXPECT_EQ(filter_by_keywords(c, {"qanda"}, MatchScope::text_fields).records(), c.records());
}

TEST(KeywordFilter, FieldsCoveredByEachScope) {
    auto base = oracle::post("1", "A");
    base.text = "nothing";
    base.author_screen_name = "plain";
    auto in_sn = base;
    in_sn.author_screen_name = "AFL_fan";
    auto in_tag = base;
    in_tag.hashtags = {"aflgf"};
    auto in_mention = base;
    in_mention.mentions = {{"9", "aflAU"}};
    auto in_extra = base;
    in_extra.raw_extra["place"] = "AFL house";
    const std::vector<std::string> kw{"afl"};
    EXPECT_TRUE(matches_keywords(in_sn, kw, MatchScope::text_fields));
    EXPECT_TRUE(matches_keywords(in_tag, kw, MatchScope::text_fields));
    EXPECT_FALSE(matches_keywords(in_mention, kw, MatchScope::text_fields));
    EXPECT_TRUE(matches_keywords(in_mention, kw, MatchScope::full_record));
    EXPECT_FALSE(matches_keywords(in_extra, kw, MatchScope::text_fields));
    EXPECT_TRUE(matches_keywords(in_extra, kw, MatchScope::full_record));
    EXPECT_FALSE(matches_keywords(base, kw, MatchScope::full_record));
}

TEST(KeywordFilter, TextScopeIsSubsetOfFullScope) {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        Corpus c("c", random_records(rng, 60));
        std::vector<std::string> kw{std::vector<std::string>{"afl", "vote", "news", "final"}[rng.below(4)]};
        auto full = ids(filter_by_keywords(c, kw, MatchScope::full_record));
        const std::set<std::string> full_set(full.begin(), full.end());
        for (const auto& id : ids(filter_by_keywords(c, kw, MatchScope::text_fields))) EXPECT_TRUE(full_set.count(id));
    }
}

TEST(Filters, LangAndKeywordFiltersCommute) {
    Rng rng(3);
    std::set<std::string> all_langs;
    for (int trial = 0; trial < 30; ++trial) {
        Corpus c("c", random_records(rng, 100));
        for (const auto& r : c) all_langs.insert(r.lang);
        const std::set<std::string> allowed{"en", "und"};
        const std::vector<std::string> kw{"afl"};
        auto lk = filter_by_keywords(filter_by_lang(c, allowed), kw, MatchScope::full_record);
        auto kl = filter_by_lang(filter_by_keywords(c, kw, MatchScope::full_record), allowed);
        EXPECT_EQ(lk.records(), kl.records());
        EXPECT_EQ(filter_by_lang(c, all_langs).records(), c.records());
    }
}

TEST(KeywordFilter, EmptyKeywordListRejected) {
    EXPECT_THROW(filter_by_keywords(Corpus{}, {}, MatchScope::text_fields), std::invalid_argument);
}

TEST(MatchScopeNames, ParseAndPrint) {
    EXPECT_EQ(parse_match_scope("text"), MatchScope::text_fields);
    EXPECT_EQ(parse_match_scope("full-record"), MatchScope::full_record);
    EXPECT_FALSE(parse_match_scope("everything"));
    EXPECT_EQ(to_string(MatchScope::text_fields), "text-fields");
}

namespace {

Corpus mention_corpus(const std::string& label, const std::string& id_prefix) {
    auto a = oracle::post(id_prefix + "1", "1001");
    a.author_screen_name = "alice";
    a.text = "hey @bob_99, see this";
    a.mentions = {{"1002", "bob_99"}};
    auto b = oracle::post(id_prefix + "2", "1002", 3);
    b.author_screen_name = "bob_99";
    b.reply_to = TweetRef{id_prefix + "1", "1001"};
    b.retweet_of = std::nullopt;
    return Corpus(label, {a, b});
}

}  // namespace

TEST(Anonymize, SameKeySamePseudonymAcrossCorpora) {
    Corpus x = anonymize(mention_corpus("x", "x"), "k1");
    Corpus y = anonymize(mention_corpus("y", "y"), "k1");
    EXPECT_EQ(x.records()[0].author_id, y.records()[0].author_id);
    EXPECT_EQ(x.records()[0].author_screen_name, y.records()[0].author_screen_name);
    EXPECT_NE(x.records()[0].author_id, "1001");
    // Mentions, text handles and reference authors are rewritten consistently.
    const auto& a = x.records()[0];
    const auto& b = x.records()[1];
    EXPECT_EQ(a.mentions[0].account_id, b.author_id);
    EXPECT_EQ(a.mentions[0].screen_name, b.author_screen_name);
    EXPECT_EQ(a.text, "hey @" + b.author_screen_name + ", see this");
    EXPECT_EQ(b.reply_to->author_id, a.author_id);
    EXPECT_EQ(b.reply_to->tweet_id, "x1");
}

TEST(Anonymize, DifferentKeysDiffer) {
    Corpus x = anonymize(mention_corpus("x", "x"), "k1");
    Corpus y = anonymize(mention_corpus("x", "x"), "k2");
    EXPECT_NE(x.records()[0].author_id, y.records()[0].author_id);
    EXPECT_NE(x.records()[0].author_screen_name, y.records()[0].author_screen_name);
}

TEST(Anonymize, TwiceIsWellFormedAndDeterministic) {
    Rng rng(8);
    Corpus c("c", random_records(rng, 200));
    Corpus once = anonymize(c, "key");
    Corpus t1 = anonymize(once, "key");
    Corpus t2 = anonymize(once, "key");
    EXPECT_EQ(plx(t1.records()), plx(t2.records()));
    EXPECT_EQ(t1.size(), c.size());
    for (const auto& r : t1) {
        EXPECT_FALSE(r.author_id.empty());
        EXPECT_TRUE(r.raw_extra.empty());
        EXPECT_TRUE(parse_plx_line(to_plx_line(r)));
    }
}

TEST(Anonymize, EmptyKeyRejected) {
    EXPECT_THROW(anonymize(Corpus{}, ""), std::invalid_argument);
}

TEST(Relabel, KeepsRecords) {
    Corpus c("a", {oracle::post("1", "A")});
    Corpus d = c.relabeled("b");
    EXPECT_EQ(d.label(), "b");
    EXPECT_EQ(d.records(), c.records());
}

TEST(LangFilter, ExactAflProportionsRetainExactly64Of100) {
    std::vector<TweetRecord> recs;
    for (int i = 0; i < 100; ++i)
        recs.push_back(with_lang(oracle::post(std::to_string(i), "A", i), i < 52 ? "en" : i < 88 ? "jp" : "und"));
    EXPECT_EQ(filter_by_lang(Corpus("c", recs), {"en", "und"}).size(), 64u);
}

TEST(ImportV1, MapsPayloadFields) {
    const std::string retweet = R"({"id":1050118621198921728,"id_str":"1050118621198921728",
        "created_at":"Wed Oct 10 20:19:24 +0000 2018","text":"RT @orig: short","lang":"en","truncated":true,
        "source":"web","user":{"id_str":"11","screen_name":"Fan"},
        "extended_tweet":{"full_text":"RT @orig: the full #AFL text","entities":{"hashtags":[{"text":"AFL"}],
            "user_mentions":[{"id_str":"22","screen_name":"orig"}],"urls":[{"url":"https://t.co/x","expanded_url":"https://afl.com.au/a"}]}},
        "entities":{"hashtags":[],"user_mentions":[],"urls":[]},
        "retweeted_status":{"id_str":"900","user":{"id_str":"22","screen_name":"orig"}},
        "in_reply_to_status_id_str":null,"favorite_count":3})";
    auto r = from_v1_status(nlohmann::json::parse(retweet));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->tweet_id, "1050118621198921728");
    EXPECT_EQ(r->author_id, "11");
    EXPECT_EQ(r->author_screen_name, "Fan");
    EXPECT_EQ(format_timestamp(r->created_at), "2018-10-10T20:19:24Z");
    EXPECT_EQ(r->text, "RT @orig: the full #AFL text");
    EXPECT_EQ(r->hashtags, (std::vector<std::string>{"afl"}));
    EXPECT_EQ(r->mentions, (std::vector<Mention>{{"22", "orig"}}));
    EXPECT_EQ(r->urls, (std::vector<std::string>{"https://afl.com.au/a"}));
    EXPECT_EQ(r->retweet_of, (TweetRef{"900", "22"}));
    EXPECT_FALSE(r->reply_to);
    EXPECT_EQ(r->raw_extra, (nlohmann::json{{"source", "web"}}));

    const std::string reply = R"({"id":5,"created_at":"Thu Mar 22 18:00:00 +0000 2019","full_text":"@x hi",
        "user":{"id":7,"screen_name":"r"},"in_reply_to_status_id_str":"4","in_reply_to_user_id_str":"8",
        "quoted_status_id_str":"3"})";
    r = from_v1_status(nlohmann::json::parse(reply));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->tweet_id, "5");
    EXPECT_EQ(r->author_id, "7");
    EXPECT_EQ(r->lang, "und");
    EXPECT_EQ(r->reply_to, (TweetRef{"4", "8"}));
    EXPECT_EQ(r->quote_of, (TweetRef{"3", ""}));
    EXPECT_TRUE(r->is_reply());
}

TEST(ImportV1, RejectsIncompletePayloads) {
    EXPECT_FALSE(from_v1_status(nlohmann::json::parse(R"({"id_str":"1","created_at":"Wed Oct 10 20:19:24 +0000 2018"})")));
    EXPECT_FALSE(from_v1_status(nlohmann::json::parse(R"({"id_str":"1","user":{"id_str":"2"},"created_at":"2018-10-10"})")));
    EXPECT_FALSE(parse_v1_timestamp("Wed Oct 10 20:19:24 +0100 2018"));
    EXPECT_FALSE(parse_v1_timestamp("Wed Foo 10 20:19:24 +0000 2018"));
    EXPECT_EQ(format_timestamp(*parse_v1_timestamp("Sun Dec 31 23:59:59 +0000 2017")), "2017-12-31T23:59:59Z");
}

TEST(ImportV1, StreamCountsAndRoundTrips) {
    std::istringstream in(
        R"({"id_str":"2","user":{"id_str":"a"},"created_at":"Wed Oct 10 20:19:25 +0000 2018","text":"b"})" "\n"
        "not json\n\n"
        R"({"id_str":"1","user":{"id_str":"a"},"created_at":"Wed Oct 10 20:19:24 +0000 2018","text":"a"})" "\n"
        R"({"id_str":"1","user":{"id_str":"a"},"created_at":"Wed Oct 10 20:19:24 +0000 2018","text":"a"})" "\n");
    auto c = import_v1(in, "v1");
    EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(c.records()[0].tweet_id, "1");
    EXPECT_EQ(c.ingest_stats().malformed, 1u);
    EXPECT_EQ(c.ingest_stats().duplicates, 1u);
    std::ostringstream out;
    write_plx(out, c);
    std::istringstream back(out.str());
    EXPECT_EQ(ingest(back, "v1").records(), c.records());
}
