#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "streamcmp/corpus_stats.hpp"
#include "streamcmp/network.hpp"
#include "streamcmp/simulator.hpp"

using namespace streamcmp;

namespace {

TweetRecord mentioning(const std::string& id, const std::string& author, std::vector<std::string> targets) {
    auto r = oracle::post(id, author);
    for (auto& t : targets) r.mentions.push_back({t, "sn_" + t});
    return r;
}

TweetRecord retweet(const std::string& id, const std::string& author, const std::string& orig_id,
                    const std::string& orig_author) {
    auto r = oracle::post(id, author);
    r.retweet_of = TweetRef{orig_id, orig_author};
    r.mentions = {{orig_author, "sn_" + orig_author}};
    r.text = "RT @sn_" + orig_author + ": hello " + orig_id;
    return r;
}

Corpus simulated(std::uint64_t seed, std::size_t posts = 4000) {
    StreamSpec s;
    s.seed = seed;
    s.exact_posts = posts;
    s.accounts = 600;
    s.communities = 4;
    s.mix = {0.4, 0.4, 0.1, 0.1};
    return generate_stream(s);
}

}  // namespace

TEST(MentionNetwork, CountsEachMention) {
    Corpus c("c", {mentioning("1", "A", {"B"}), mentioning("2", "A", {"B"}), mentioning("3", "B", {"A"})});
    auto net = build_mention_network(c);
    EXPECT_EQ(net.kind(), NetworkKind::mention);
    EXPECT_EQ(net.nodes(), (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(net.edge_count(), 2u);
    EXPECT_EQ(net.weight("A", "B"), 2u);
    EXPECT_EQ(net.weight("B", "A"), 1u);
    EXPECT_EQ(net.provenance(), "c");
}

TEST(MentionNetwork, NoMentionsNoEdges) {
    Corpus c("c", {oracle::post("1", "A"), oracle::post("2", "B")});
    auto net = build_mention_network(c);
    EXPECT_EQ(net.edge_count(), 0u);
}

TEST(MentionNetwork, RetweetMentionFlag) {
    Corpus c("c", {oracle::post("1", "B"), retweet("2", "A", "1", "B")});
    BuildOptions on;
    EXPECT_EQ(build_mention_network(c, on).weight("A", "B"), 1u);
    BuildOptions off;
    off.include_retweet_mentions = false;
    EXPECT_FALSE(build_mention_network(c, off).weight("A", "B"));
}

TEST(MentionNetwork, RepeatedMentionWithinOneTweet) {
    Corpus c("c", {mentioning("1", "A", {"B", "B", "C"})});
    EXPECT_EQ(build_mention_network(c).weight("A", "B"), 2u);
    BuildOptions once;
    once.count_per_tweet = true;
    EXPECT_EQ(build_mention_network(c, once).weight("A", "B"), 1u);
}

TEST(MentionNetwork, SelfMentionDroppedUnlessAllowed) {
    Corpus c("c", {mentioning("1", "A", {"A", "B"})});
    auto net = build_mention_network(c);
    EXPECT_FALSE(net.has_self_loops());
    EXPECT_EQ(net.edge_count(), 1u);
    BuildOptions loops;
    loops.allow_self_loops = true;
    EXPECT_EQ(build_mention_network(c, loops).weight("A", "A"), 1u);
}

TEST(ReplyNetwork, RepeatedReplies) {
    std::vector<TweetRecord> recs{oracle::post("0", "B")};
    for (int i = 1; i <= 3; ++i) {
        auto r = oracle::post(std::to_string(i), "A", i);
        r.reply_to = TweetRef{"0", "B"};
        recs.push_back(r);
    }
    auto net = build_reply_network(Corpus("c", recs));
    EXPECT_EQ(net.edge_count(), 1u);
    EXPECT_EQ(net.weight("A", "B"), 3u);
}

TEST(ReplyNetwork, OffCorpusTargetStillLinks) {
    auto r = oracle::post("1", "A");
    r.reply_to = TweetRef{"404", "C"};
    auto net = build_reply_network(Corpus("c", {r}));
    EXPECT_EQ(net.weight("A", "C"), 1u);
}

TEST(ReplyNetwork, MissingTargetAuthorIsUnresolved) {
    auto r = oracle::post("1", "A");
    r.reply_to = TweetRef{"404", ""};
    auto net = build_reply_network(Corpus("c", {r}));
    EXPECT_EQ(net.edge_count(), 0u);
    EXPECT_EQ(net.unresolved(), 1u);
}

TEST(ReplyNetwork, SelfReplyExcludedByDefault) {
    auto r = oracle::post("2", "A", 5);
    r.reply_to = TweetRef{"1", "A"};
    auto net = build_reply_network(Corpus("c", {oracle::post("1", "A"), r}));
    EXPECT_EQ(net.edge_count(), 0u);
    EXPECT_FALSE(net.has_self_loops());
}

TEST(RetweetNetwork, DistinctTweetsOfSameAuthor) {
    Corpus c("c", {oracle::post("1", "B"), oracle::post("2", "B"), retweet("3", "A", "1", "B"),
                   retweet("4", "A", "2", "B")});
    auto net = build_retweet_network(c);
    EXPECT_EQ(net.edge_count(), 1u);
    EXPECT_EQ(net.weight("A", "B"), 2u);
}

TEST(RetweetNetwork, QuoteFlag) {
    auto q = oracle::post("2", "A");
    q.quote_of = TweetRef{"1", "B"};
    Corpus c("c", {oracle::post("1", "B"), q});
    EXPECT_EQ(build_retweet_network(c).edge_count(), 0u);
    BuildOptions with;
    with.include_quotes = true;
    EXPECT_EQ(build_retweet_network(c, with).weight("A", "B"), 1u);
}

TEST(RetweetNetwork, LargeFixtureEdgeCount) {
    Corpus c = oracle::retweet_network_fixture(3234, 7855);
    auto net = build_retweet_network(c);
    EXPECT_GE(net.node_count(), 3234u);
    EXPECT_EQ(net.edge_count(), 7855u);
    EXPECT_EQ(build_network(c, NetworkKind::retweet), net);
}

TEST(NetworkProperties, RetweetWeightSumMatchesCounts) {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        Corpus c = simulated(seed);
        for (bool quotes : {false, true}) {
            std::size_t expected = 0;
            for (const auto& r : c) {
                const std::optional<TweetRef>* ref = r.is_retweet() ? &r.retweet_of : (quotes && r.is_quote()) ? &r.quote_of : nullptr;
                if (ref && (*ref)->author_id != r.author_id) ++expected;
            }
            BuildOptions o;
            o.include_quotes = quotes;
            auto s = corpus_stats(c);
            std::size_t self = 0;
            for (const auto& r : c)
                if (r.is_retweet() && r.retweet_of->author_id == r.author_id) ++self;
            EXPECT_EQ(build_retweet_network(c, o).total_weight(), expected);
            if (!quotes) EXPECT_EQ(expected, s.retweets - self);
        }
    }
}

TEST(NetworkProperties, ReplyNodesWithinAuthorsAndTargets) {
    Corpus c = simulated(9);
    std::set<std::string> allowed;
    for (const auto& r : c) {
        allowed.insert(r.author_id);
        if (r.is_reply()) allowed.insert(r.reply_to->author_id);
    }
    const auto net = build_reply_network(c);
    ASSERT_GT(net.edge_count(), 0u);
    for (const auto& n : net.nodes()) EXPECT_TRUE(allowed.count(n)) << n;
}

TEST(NetworkProperties, RebuildIsIdentical) {
    Corpus c = simulated(10);
    for (auto kind : {NetworkKind::mention, NetworkKind::reply, NetworkKind::retweet})
        EXPECT_EQ(build_network(c, kind), build_network(c, kind));
}

TEST(NetworkProperties, MentionEdgesCoverRetweetEdges) {
    for (std::uint64_t seed : {11u, 12u}) {
        Corpus c = simulated(seed);
        auto m = build_mention_network(c);
        auto rt = build_retweet_network(c);
        ASSERT_GT(rt.edge_count(), 0u);
        for (const auto& e : rt.edges()) {
            auto w = m.weight(rt.nodes()[e.source], rt.nodes()[e.target]);
            ASSERT_TRUE(w);
            EXPECT_GE(*w, e.weight);
        }
    }
}

TEST(NetworkProperties, InvariantsHold) {
    Corpus c = simulated(13);
    for (auto kind : {NetworkKind::mention, NetworkKind::reply, NetworkKind::retweet}) {
        auto net = build_network(c, kind);
        EXPECT_TRUE(std::is_sorted(net.nodes().begin(), net.nodes().end()));
        for (const auto& e : net.edges()) {
            EXPECT_GE(e.weight, 1u);
            EXPECT_NE(e.source, e.target);
            EXPECT_LT(e.source, net.node_count());
            EXPECT_LT(e.target, net.node_count());
        }
    }
}

TEST(EdgeListIo, RoundTripKeepsIsolates) {
    NetworkBuilder b(NetworkKind::reply, "x");
    b.add_node("lonely");
    b.add_interaction("a", "b", 3);
    b.add_interaction("b", "a");
    b.add_interaction("c", "c");  // dropped loop leaves c as an isolate
    auto net = b.build();
    EXPECT_EQ(net.node_count(), 4u);
    std::ostringstream edges, nodes;
    write_edge_list(edges, net);
    write_node_list(nodes, net);
    EXPECT_EQ(edges.str(), "source,target,weight\na,b,3\nb,a,1\n");
    std::istringstream ein(edges.str()), nin(nodes.str());
    auto back = read_network(ein, &nin, NetworkKind::reply, "x");
    EXPECT_EQ(back.nodes(), net.nodes());
    EXPECT_EQ(back.edges(), net.edges());
}

TEST(EdgeListIo, MalformedRowsThrow) {
    std::istringstream bad("source,target,weight\na,b,zero\n");
    EXPECT_THROW(read_network(bad, nullptr, NetworkKind::mention, "x"), std::runtime_error);
    std::istringstream neg("source,target,weight\na,b,0\n");
    EXPECT_THROW(read_network(neg, nullptr, NetworkKind::mention, "x"), std::runtime_error);
}

TEST(NetworkKindNames, ParseAndPrint) {
    EXPECT_EQ(parse_network_kind("reply"), NetworkKind::reply);
    EXPECT_FALSE(parse_network_kind("hashtag"));
    EXPECT_EQ(to_string(NetworkKind::retweet), "retweet");
}
