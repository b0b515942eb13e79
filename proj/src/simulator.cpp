#include "streamcmp/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "streamcmp/rng.hpp"

namespace streamcmp {

namespace {

constexpr std::array kFillerWords = {
    "the",    "and",     "tonight", "people",  "think",  "really", "question", "panel",    "answer", "great",
    "watch",  "show",    "debate",  "what",    "about",  "country", "policy",  "minister", "should", "never",
    "always", "right",   "point",   "because", "good",   "week",   "time",     "today",    "story",  "history",
    "match",  "game",    "team",    "season",  "win",    "crowd",  "round",    "final",    "fans",   "coach",
    "vote",   "polling", "booth",   "result",  "count",  "seat",   "party",    "leader",   "news",   "live"};

constexpr std::array kTopicTags = {"auspol", "nbn", "climate", "breaking", "marriageequality", "ssm",
                                   "nswpol", "qldpol", "springst", "pmlive", "footy", "sport",
                                   "election", "democracy", "health", "economy"};

constexpr std::uint64_t kTweetIdBase = 1060000000000000000ULL;
constexpr std::uint64_t kAccountIdBase = 1000000000ULL;

bool contains_any(std::string_view s, const std::vector<std::string>& lowered) {
    const std::string low = to_lower_ascii(s);
    for (const auto& k : lowered)
        if (low.find(k) != std::string::npos) return true;
    return false;
}

// Sampler over a fixed discrete distribution.
class Discrete {
public:
    Discrete() = default;
    explicit Discrete(const std::vector<double>& weights) {
        cdf_.resize(weights.size());
        std::partial_sum(weights.begin(), weights.end(), cdf_.begin());
    }
    std::size_t operator()(Rng& rng) const {
        const double u = rng.uniform() * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    }
    std::size_t size() const { return cdf_.size(); }

private:
    std::vector<double> cdf_;
};

void check_group(const char* name, std::initializer_list<double> values) {
    double sum = 0.0;
    for (double v : values) {
        if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument(fmt::format("{}: negative or non-finite probability", name));
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument(fmt::format("{}: probabilities sum to {}, not 1", name, sum));
}

double rate_multiplier(const StreamSpec& spec, Seconds offset) {
    double m = 1.0;
    for (const auto& b : spec.burst_profile)
        if (offset >= b.start && offset < b.start + b.length) m *= b.multiplier;
    return m;
}

double max_multiplier(const StreamSpec& spec) {
    double m = 1.0;
    for (const auto& b : spec.burst_profile)
        if (b.multiplier > 1.0) m *= b.multiplier;
    return m;
}

std::vector<std::int64_t> arrival_offsets(const StreamSpec& spec, Rng& rng) {
    std::vector<std::int64_t> out;
    const double dur = static_cast<double>(spec.duration.count());
    const double rmax = spec.base_rate / 60.0 * max_multiplier(spec);
    auto accept = [&](double t) {
        const double r = rate_multiplier(spec, Seconds{static_cast<std::int64_t>(t)}) / max_multiplier(spec);
        return rng.uniform() < r;
    };
    if (spec.exact_posts) {
        while (out.size() < *spec.exact_posts) {
            const double t = rng.uniform() * dur;
            if (accept(t)) out.push_back(static_cast<std::int64_t>(t));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    double t = 0.0;
    while (true) {
        t += rng.exponential(rmax);
        if (t >= dur) break;
        if (accept(t)) out.push_back(static_cast<std::int64_t>(t));
    }
    return out;
}

enum class PostType { original, retweet, quote, reply };

std::vector<PostType> post_types(const StreamSpec& spec, std::size_t n, Rng& rng) {
    std::vector<PostType> types(n, PostType::original);
    if (n == 0) return types;
    if (spec.exact_mix) {
        auto count = [&](double p) { return static_cast<std::size_t>(std::llround(p * static_cast<double>(n))); };
        std::size_t rt = count(spec.mix.retweet), qt = count(spec.mix.quote), rp = count(spec.mix.reply);
        if (rt + qt + rp >= n) throw std::invalid_argument("exact_mix leaves no original posts");
        std::size_t i = 0;
        for (std::size_t k = 0; k < rt; ++k) types[i++] = PostType::retweet;
        for (std::size_t k = 0; k < qt; ++k) types[i++] = PostType::quote;
        for (std::size_t k = 0; k < rp; ++k) types[i++] = PostType::reply;
        rng.shuffle(std::span<PostType>(types));
    } else {
        const Discrete pick({spec.mix.original, spec.mix.retweet, spec.mix.quote, spec.mix.reply});
        for (auto& t : types) t = static_cast<PostType>(pick(rng));
    }
    // Interactions need an earlier post to point at.
    if (types.front() != PostType::original) {
        auto it = std::find(types.begin(), types.end(), PostType::original);
        std::iter_swap(types.begin(), it);
    }
    return types;
}

}  // namespace

void StreamSpec::validate() const {
    check_group("mix", {mix.original, mix.retweet, mix.quote, mix.reply});
    check_group("keyword_placement", {keyword_placement.in_text, keyword_placement.url_only, keyword_placement.none});
    if (lang_mix.empty()) throw std::invalid_argument("lang_mix: empty");
    double lang_sum = 0.0;
    for (const auto& [lang, p] : lang_mix) {
        if (p < 0.0) throw std::invalid_argument("lang_mix: negative probability");
        lang_sum += p;
    }
    if (std::abs(lang_sum - 1.0) > 1e-9) throw std::invalid_argument("lang_mix: probabilities do not sum to 1");
    if (!(base_rate > 0.0)) throw std::invalid_argument("base_rate must be positive");
    if (duration.count() < 0) throw std::invalid_argument("duration must be non-negative");
    if (accounts == 0) throw std::invalid_argument("accounts must be positive");
    if (max_activity == 0) throw std::invalid_argument("max_activity must be positive");
    if (keywords.empty() && (keyword_placement.in_text > 0 || keyword_placement.url_only > 0))
        throw std::invalid_argument("keywords: empty but keyword placement requested");
    for (const auto& k : keywords)
        if (k.empty()) throw std::invalid_argument("keywords: empty keyword");
    for (const auto& b : burst_profile)
        if (!(b.multiplier > 0.0) || b.length.count() <= 0) throw std::invalid_argument("burst_profile: bad window");
    if (every_account_posts && exact_posts && *exact_posts < accounts && *exact_posts > 0)
        throw std::invalid_argument("every_account_posts needs exact_posts >= accounts");
    for (double p : {mention_probability, hashtag_probability, url_probability, popular_target_share, community_affinity})
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability outside [0, 1]");
    if (!(recency_scale > 0.0)) throw std::invalid_argument("recency_scale must be positive");
}

Corpus generate_stream(const StreamSpec& spec, std::string label) {
    spec.validate();
    if (spec.duration.count() == 0 || (spec.exact_posts && *spec.exact_posts == 0)) return Corpus(std::move(label), {});

    Rng root(spec.seed);
    Rng time_rng = root.fork(1), type_rng = root.fork(2), author_rng = root.fork(3), content_rng = root.fork(4),
        target_rng = root.fork(5), lang_rng = root.fork(6);

    std::vector<std::string> keywords_lower;
    for (const auto& k : spec.keywords) keywords_lower.push_back(to_lower_ascii(k));

    std::vector<std::string> fillers;
    for (const char* w : kFillerWords)
        if (!contains_any(w, keywords_lower)) fillers.emplace_back(w);
    std::vector<std::string> topics;
    for (const char* t : kTopicTags)
        if (!contains_any(t, keywords_lower)) topics.emplace_back(t);
    if (topics.size() > spec.topic_hashtags) topics.resize(spec.topic_hashtags);
    std::vector<std::string> vocab;
    for (std::size_t i = 0; i < spec.vocabulary_hashtags; ++i) {
        auto tag = fmt::format("tag{}", i);
        if (!contains_any(tag, keywords_lower)) vocab.push_back(std::move(tag));
    }

    // Accounts with power-law activity.
    std::vector<double> activity_weights(spec.max_activity);
    for (std::size_t a = 0; a < spec.max_activity; ++a)
        activity_weights[a] = std::pow(static_cast<double>(a + 1), -spec.activity_exponent);
    const Discrete activity_draw(activity_weights);
    std::vector<double> account_weight(spec.accounts);
    std::vector<std::string> account_id(spec.accounts), screen_name(spec.accounts);
    for (std::size_t i = 0; i < spec.accounts; ++i) {
        account_weight[i] = static_cast<double>(activity_draw(author_rng) + 1);
        account_id[i] = std::to_string(kAccountIdBase + i);
        screen_name[i] = fmt::format("user{}", i);
        if (contains_any(screen_name[i], keywords_lower))
            throw std::invalid_argument("keyword collides with generated screen names: " + screen_name[i]);
    }
    const Discrete author_draw(account_weight);

    std::vector<std::size_t> community_of(spec.accounts, 0);
    std::vector<std::vector<std::size_t>> members;
    std::vector<Discrete> member_draw;
    if (spec.communities > 0) {
        members.resize(spec.communities);
        for (std::size_t i = 0; i < spec.accounts; ++i) {
            community_of[i] = author_rng.below(spec.communities);
            members[community_of[i]].push_back(i);
        }
        for (const auto& m : members) {
            std::vector<double> w;
            for (auto i : m) w.push_back(account_weight[i]);
            member_draw.push_back(w.empty() ? Discrete{} : Discrete(w));
        }
    }
    auto draw_contact = [&](std::size_t author) {
        if (spec.communities > 0 && content_rng.bernoulli(spec.community_affinity)) {
            const auto& m = members[community_of[author]];
            return m[member_draw[community_of[author]](content_rng)];
        }
        return author_draw(content_rng);
    };

    const auto offsets = arrival_offsets(spec, time_rng);
    const std::size_t n = offsets.size();
    const auto types = post_types(spec, n, type_rng);

    std::vector<std::size_t> authors(n);
    if (spec.every_account_posts && n >= spec.accounts) {
        std::vector<std::size_t> slots(n);
        std::iota(slots.begin(), slots.end(), std::size_t{0});
        author_rng.shuffle(std::span<std::size_t>(slots));
        std::vector<char> fixed(n, 0);
        for (std::size_t a = 0; a < spec.accounts; ++a) {
            authors[slots[a]] = a;
            fixed[slots[a]] = 1;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!fixed[i]) authors[i] = author_draw(author_rng);
    } else {
        for (auto& a : authors) a = author_draw(author_rng);
    }

    std::vector<double> lang_weights;
    for (const auto& [l, p] : spec.lang_mix) lang_weights.push_back(p);
    const Discrete lang_draw(lang_weights);
    const Discrete placement_draw(
        {spec.keyword_placement.in_text, spec.keyword_placement.url_only, spec.keyword_placement.none});

    std::vector<double> topic_weights(topics.size());
    for (std::size_t i = 0; i < topics.size(); ++i) topic_weights[i] = 1.0 / static_cast<double>(i + 1);
    const Discrete topic_draw = topics.empty() ? Discrete{} : Discrete(topic_weights);

    std::vector<TweetRecord> records;
    records.reserve(n);
    std::vector<std::size_t> targetable;     // indices of non-retweet posts
    std::vector<std::size_t> retweet_targets;  // one entry per retweet, for preferential re-targeting

    std::vector<std::size_t> post_author;  // account index per generated post
    // Same lists split by the community of the post's author.
    std::vector<std::vector<std::size_t>> local_targetable(std::max<std::size_t>(spec.communities, 1));
    std::vector<std::vector<std::size_t>> local_retweet_targets(local_targetable.size());

    auto recent = [&](const std::vector<std::size_t>& list) -> std::size_t {
        const double back = std::floor(target_rng.exponential(1.0 / spec.recency_scale));
        const std::size_t m = list.size();
        const std::size_t off = back >= static_cast<double>(m) ? target_rng.below(m) : static_cast<std::size_t>(back);
        return list[m - 1 - off];
    };
    auto pick_target = [&](std::size_t author, bool allow_popular) -> std::size_t {
        const std::size_t c = community_of[author];
        const bool local = spec.communities > 0 && !local_targetable[c].empty() &&
                           target_rng.bernoulli(spec.community_affinity);
        const auto& pool = local ? local_targetable[c] : targetable;
        const auto& popular = local ? local_retweet_targets[c] : retweet_targets;
        if (allow_popular && !popular.empty() && target_rng.bernoulli(spec.popular_target_share))
            return popular[target_rng.below(popular.size())];
        return recent(pool);
    };

    auto compose = [&](TweetRecord& r, std::size_t author) {
        const std::size_t placement = spec.keywords.empty() ? 2 : placement_draw(content_rng);
        const std::size_t words = 4 + content_rng.below(8);
        std::vector<std::string> parts;
        for (std::size_t w = 0; w < words; ++w) parts.push_back(fillers[content_rng.below(fillers.size())]);
        if (placement == 0) {
            const auto& kw = spec.keywords[content_rng.below(spec.keywords.size())];
            if (content_rng.bernoulli(0.5)) {
                parts.push_back("#" + kw);
                r.hashtags.push_back(to_lower_ascii(kw));
            } else {
                parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(content_rng.below(parts.size() + 1)), kw);
            }
        } else if (placement == 1) {
            const auto& kw = spec.keywords[content_rng.below(spec.keywords.size())];
            r.urls.push_back(fmt::format("https://www.{}.com.au/news/{}", to_lower_ascii(kw), content_rng.below(5000)));
        }
        if (!topics.empty() && content_rng.bernoulli(spec.hashtag_probability)) {
            const std::size_t k = 1 + content_rng.below(2);
            for (std::size_t t = 0; t < k; ++t) {
                const auto& tag = topics[topic_draw(content_rng)];
                parts.push_back("#" + tag);
                r.hashtags.push_back(tag);
            }
        }
        if (!vocab.empty() && content_rng.bernoulli(0.2)) {
            const auto& tag = vocab[std::min(vocab.size() - 1,
                                             static_cast<std::size_t>(std::floor(content_rng.exponential(1.0 / 20.0))))];
            parts.push_back("#" + tag);
            r.hashtags.push_back(tag);
        }
        if (content_rng.bernoulli(spec.url_probability)) {
            const auto k = std::min<std::size_t>(499, static_cast<std::size_t>(std::floor(content_rng.exponential(1.0 / 30.0))));
            r.urls.push_back(fmt::format("https://example{}.org/p/{}", k, k * 7 + 1));
        }
        if (content_rng.bernoulli(spec.mention_probability)) {
            const std::size_t k = content_rng.bernoulli(0.3) ? 2 : 1;
            for (std::size_t t = 0; t < k; ++t) {
                const std::size_t who = draw_contact(author);
                r.mentions.push_back({account_id[who], screen_name[who]});
                parts.insert(parts.begin(), "@" + screen_name[who]);
            }
        }
        std::string text;
        for (const auto& p : parts) {
            if (p.empty()) continue;
            if (!text.empty()) text += ' ';
            text += p;
        }
        r.text = std::move(text);
        r.lang = spec.lang_mix[lang_draw(lang_rng)].first;
    };

    for (std::size_t i = 0; i < n; ++i) {
        TweetRecord r;
        r.tweet_id = std::to_string(kTweetIdBase + i);
        const std::size_t author = authors[i];
        r.author_id = account_id[author];
        r.author_screen_name = screen_name[author];
        r.created_at = spec.start + Seconds{offsets[i]};
        PostType type = targetable.empty() ? PostType::original : types[i];

        switch (type) {
            case PostType::original:
                compose(r, author);
                break;
            case PostType::retweet: {
                const std::size_t target = pick_target(author, true);
                const TweetRecord& orig = records[target];
                r.text = "RT @" + orig.author_screen_name + ": " + orig.text;
                r.lang = orig.lang;
                r.hashtags = orig.hashtags;
                r.urls = orig.urls;
                r.mentions.push_back({orig.author_id, orig.author_screen_name});
                r.mentions.insert(r.mentions.end(), orig.mentions.begin(), orig.mentions.end());
                r.retweet_of = TweetRef{orig.tweet_id, orig.author_id};
                retweet_targets.push_back(target);
                local_retweet_targets[community_of[post_author[target]]].push_back(target);
                break;
            }
            case PostType::quote: {
                const TweetRecord& orig = records[pick_target(author, false)];
                compose(r, author);
                r.quote_of = TweetRef{orig.tweet_id, orig.author_id};
                break;
            }
            case PostType::reply: {
                const TweetRecord& orig = records[pick_target(author, false)];
                compose(r, author);
                r.text = "@" + orig.author_screen_name + " " + r.text;
                r.mentions.insert(r.mentions.begin(), Mention{orig.author_id, orig.author_screen_name});
                r.reply_to = TweetRef{orig.tweet_id, orig.author_id};
                break;
            }
        }
        if (type != PostType::retweet) {
            targetable.push_back(i);
            local_targetable[community_of[author]].push_back(i);
        }
        post_author.push_back(author);
        records.push_back(std::move(r));
    }
    return Corpus(std::move(label), std::move(records));
}

void CollectorProfile::validate() const {
    if (keywords.empty()) throw std::invalid_argument("collector " + name + ": no keywords");
    if (rate_limit && *rate_limit == 0) throw std::invalid_argument("collector " + name + ": rate limit must be >= 1");
    if (topic_tracking) {
        if (topic_tracking->threshold < 1) throw std::invalid_argument("collector " + name + ": threshold must be >= 1");
        if (topic_tracking->window.count() <= 0) throw std::invalid_argument("collector " + name + ": window must be > 0");
    }
    if (duplicate_rate < 0.0 || duplicate_rate > 1.0) throw std::invalid_argument("collector " + name + ": bad duplicate rate");
    auto sorted = outages;
    std::sort(sorted.begin(), sorted.end(), [](const Outage& a, const Outage& b) { return a.start < b.start; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].duration.count() <= 0) throw std::invalid_argument("collector " + name + ": empty outage");
        if (i > 0 && sorted[i - 1].start + sorted[i - 1].duration > sorted[i].start)
            throw std::invalid_argument("collector " + name + ": overlapping outages");
    }
}

CollectorResult apply_collector(const Corpus& truth, const CollectorProfile& profile, std::uint64_t seed) {
    profile.validate();
    CollectorResult out;
    Rng rng(seed);

    std::vector<std::string> active;
    std::unordered_set<std::string> active_set;
    for (const auto& k : profile.keywords) {
        auto low = to_lower_ascii(k);
        if (active_set.insert(low).second) active.push_back(low);
    }

    std::deque<std::pair<Timestamp, std::string>> window;
    std::unordered_map<std::string, std::size_t> window_counts;
    std::optional<Timestamp> minute;
    std::size_t in_minute = 0;
    std::vector<TweetRecord> collected;

    for (const auto& r : truth) {
        if (!matches_keywords(r, active, profile.match_scope)) {
            ++out.counters.unmatched;
            continue;
        }
        if (std::any_of(profile.outages.begin(), profile.outages.end(),
                        [&](const Outage& o) { return o.contains(r.created_at); })) {
            ++out.counters.outage_dropped;
            continue;
        }
        if (profile.rate_limit) {
            const Timestamp m = floor_to(r.created_at, Seconds{60});
            if (!minute || *minute != m) {
                minute = m;
                in_minute = 0;
            }
            if (in_minute >= *profile.rate_limit) {
                ++out.counters.rate_limited;
                continue;
            }
            ++in_minute;
        }
        if (profile.topic_tracking) {
            const auto& tt = *profile.topic_tracking;
            while (!window.empty() && window.front().first + tt.window <= r.created_at) {
                auto it = window_counts.find(window.front().second);
                if (--it->second == 0) window_counts.erase(it);
                window.pop_front();
            }
            for (const auto& tag : r.hashtags) {
                if (active_set.count(tag)) continue;
                window.emplace_back(r.created_at, tag);
                if (++window_counts[tag] >= tt.threshold) {
                    active_set.insert(tag);
                    active.push_back(tag);
                    out.counters.expanded_terms.push_back(tag);
                }
            }
        }
        out.emitted.push_back(r);
        collected.push_back(r);
        if (profile.duplicate_rate > 0.0 && rng.bernoulli(profile.duplicate_rate)) {
            out.emitted.push_back(r);
            ++out.counters.duplicates_emitted;
        }
    }
    IngestStats stats;
    stats.lines = stats.parsed = out.emitted.size();
    stats.duplicates = out.counters.duplicates_emitted;
    out.corpus = Corpus(profile.name, std::move(collected), stats);
    return out;
}

namespace {

Timestamp ts(const char* iso) { return *parse_timestamp(iso); }

Scenario qanda_tracking() {
    Scenario sc;
    sc.name = "qanda-tracking";
    sc.description =
        "Live TV hashtag stream; a text-fields collector with topic tracking versus a full-record collector.";
    auto& s = sc.stream;
    s.seed = 11;
    s.start = ts("2018-11-08T08:00:00Z");
    s.duration = Seconds{4 * 3600};
    s.accounts = 7000;
    s.base_rate = 110.0;
    s.mix = {0.40, 0.52, 0.03, 0.05};
    s.keywords = {"qanda"};
    s.keyword_placement = {0.45, 0.25, 0.30};
    s.burst_profile = {{Seconds{3600}, Seconds{3600}, 2.5}};
    s.communities = 20;
    sc.profiles.push_back({"twarc", MatchScope::full_record, {"qanda"}, std::nullopt, {}, std::nullopt, 0.0});
    sc.profiles.push_back({"rapid", MatchScope::text_fields, {"qanda"}, std::nullopt, {}, TopicTracking{5, Seconds{600}}, 0.0});
    sc.collector_seed = 101;
    return sc;
}

Scenario afl_langmix() {
    Scenario sc;
    sc.name = "afl-langmix";
    sc.description =
        "Sports stream where about half the keyword hits sit only in a URL domain; a text-fields collector retains "
        "roughly half of what a full-record collector sees.";
    auto& s = sc.stream;
    s.seed = 23;
    s.start = ts("2018-09-27T00:00:00Z");
    s.duration = Seconds{3 * 86400};
    s.accounts = 16000;
    s.base_rate = 10.0;
    s.mix = {0.62, 0.26, 0.04, 0.08};
    s.lang_mix = {{"en", 0.52}, {"ja", 0.36}, {"und", 0.12}};
    s.keywords = {"afl"};
    s.keyword_placement = {0.51, 0.49, 0.0};
    s.burst_profile = {{Seconds{2 * 86400 + 4 * 3600}, Seconds{3 * 3600}, 4.0}};
    s.communities = 30;
    sc.profiles.push_back({"twarc", MatchScope::full_record, {"afl"}, std::nullopt, {}, std::nullopt, 0.0});
    sc.profiles.push_back({"rapid", MatchScope::text_fields, {"afl"}, std::nullopt, {}, std::nullopt, 0.0});
    sc.collector_seed = 202;
    return sc;
}

Scenario afl_identical() {
    Scenario sc;
    sc.name = "afl-identical";
    sc.description =
        "Two runs of the same collector over the same stream, differing only in duplicate-emission noise.";
    auto& s = sc.stream;
    s.seed = 37;
    s.start = ts("2018-09-24T00:00:00Z");
    s.duration = Seconds{6 * 86400};
    s.accounts = 14000;
    s.base_rate = 3.5;
    s.mix = {0.45, 0.45, 0.03, 0.07};
    s.keywords = {"afl"};
    s.keyword_placement = {1.0, 0.0, 0.0};
    s.communities = 30;
    sc.profiles.push_back({"rapid1", MatchScope::text_fields, {"afl"}, std::nullopt, {}, std::nullopt, 0.002});
    sc.profiles.push_back({"rapid2", MatchScope::text_fields, {"afl"}, std::nullopt, {}, std::nullopt, 0.002});
    sc.collector_seed = 303;
    return sc;
}

Scenario election_outage() {
    Scenario sc;
    sc.name = "election-outage";
    sc.description =
        "Election-day stream collected by three tools; one loses its connection twice (110 and 96 minutes).";
    auto& s = sc.stream;
    s.seed = 41;
    s.start = ts("2019-03-22T13:00:00Z");
    s.duration = Seconds{24 * 3600};
    s.accounts = 22000;
    s.base_rate = 25.4;
    s.mix = {0.265, 0.67, 0.03, 0.035};
    s.keywords = {"nswvotes"};
    s.keyword_placement = {0.97, 0.03, 0.0};
    // Quiet overnight (local time), busy once polls close.
    s.burst_profile = {{Seconds{0}, Seconds{7 * 3600}, 0.4}, {Seconds{18 * 3600}, Seconds{5 * 3600}, 2.2}};
    s.communities = 25;
    sc.profiles.push_back({"twarc", MatchScope::full_record, {"nswvotes"}, std::nullopt, {}, std::nullopt, 0.0});
    sc.profiles.push_back({"rapid", MatchScope::text_fields, {"nswvotes"}, std::nullopt, {}, std::nullopt, 0.0});
    sc.profiles.push_back({"tweepy", MatchScope::full_record, {"nswvotes"}, std::nullopt,
                           {{ts("2019-03-22T18:00:00Z"), Seconds{110 * 60}}, {ts("2019-03-23T00:00:00Z"), Seconds{96 * 60}}},
                           std::nullopt, 0.0});
    sc.collector_seed = 404;
    return sc;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string num(double v) { return fmt::format("{}", v); }

std::map<std::string, double> parse_weights(const KeyValueConfig& cfg, const std::string& key,
                                            const std::vector<std::string>& allowed) {
    std::map<std::string, double> out;
    for (const auto& item : split(cfg.require(key), ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError(key, "expected name:probability, got " + item);
        const std::string name = trim(std::string_view(item).substr(0, colon));
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            throw ConfigError(key, "unknown entry " + name);
        KeyValueConfig one;
        one.set(key, trim(std::string_view(item).substr(colon + 1)));
        if (!out.emplace(name, one.get_double(key, 0.0)).second) throw ConfigError(key, "repeated entry " + name);
    }
    return out;
}

Seconds require_duration(const std::string& key, std::string_view text) {
    auto d = parse_duration(text);
    if (!d) throw ConfigError(key, "bad duration: " + std::string(text));
    return *d;
}

Timestamp require_timestamp(const std::string& key, std::string_view text) {
    auto t = parse_timestamp(text);
    if (!t) throw ConfigError(key, "bad timestamp: " + std::string(text));
    return *t;
}

std::size_t require_count(const KeyValueConfig& cfg, const std::string& key, std::size_t fallback) {
    const long long v = cfg.get_int(key, static_cast<long long>(fallback));
    if (v < 0) throw ConfigError(key, "must be non-negative");
    return static_cast<std::size_t>(v);
}

const std::vector<std::string> kStreamKeys = {
    "seed", "start", "duration", "accounts", "activity_exponent", "max_activity", "base_rate", "mix", "lang_mix",
    "keyword_placement", "keywords", "bursts", "mention_probability", "hashtag_probability", "url_probability",
    "topic_hashtags", "vocabulary_hashtags", "recency_scale", "popular_target_share", "communities",
    "community_affinity", "exact_posts", "exact_mix",
    "every_account_posts"};
const std::vector<std::string> kCollectorKeys = {"scope", "keywords", "rate_limit", "outages", "topic_tracking",
                                                 "duplicate_rate"};

}  // namespace

std::vector<std::string> scenario_names() { return {"qanda-tracking", "afl-langmix", "afl-identical", "election-outage"}; }

Scenario builtin_scenario(std::string_view name, std::optional<std::uint64_t> seed) {
    Scenario sc;
    if (name == "qanda-tracking")
        sc = qanda_tracking();
    else if (name == "afl-langmix")
        sc = afl_langmix();
    else if (name == "afl-identical")
        sc = afl_identical();
    else if (name == "election-outage")
        sc = election_outage();
    else
        throw std::invalid_argument(fmt::format("unknown scenario '{}'; valid names: {}", name, join(scenario_names(), ", ")));
    if (seed) {
        sc.stream.seed = *seed;
        sc.collector_seed = *seed * 1000 + 1;
    }
    return sc;
}

ScenarioRun run_scenario(const Scenario& scenario) {
    ScenarioRun run;
    run.truth = generate_stream(scenario.stream, "truth");
    for (std::size_t i = 0; i < scenario.profiles.size(); ++i)
        run.collected.push_back(apply_collector(run.truth, scenario.profiles[i], scenario.collector_seed + i));
    return run;
}

KeyValueConfig scenario_to_config(const Scenario& sc) {
    KeyValueConfig cfg;
    cfg.set("scenario.name", sc.name);
    cfg.set("scenario.description", sc.description);
    cfg.set("scenario.collector_seed", std::to_string(sc.collector_seed));
    const auto& s = sc.stream;
    cfg.set("stream.seed", std::to_string(s.seed));
    cfg.set("stream.start", format_timestamp(s.start));
    cfg.set("stream.duration", format_duration(s.duration));
    cfg.set("stream.accounts", std::to_string(s.accounts));
    cfg.set("stream.activity_exponent", num(s.activity_exponent));
    cfg.set("stream.max_activity", std::to_string(s.max_activity));
    cfg.set("stream.base_rate", num(s.base_rate));
    cfg.set("stream.mix", fmt::format("original:{},retweet:{},quote:{},reply:{}", s.mix.original, s.mix.retweet,
                                      s.mix.quote, s.mix.reply));
    std::vector<std::string> langs;
    for (const auto& [l, p] : s.lang_mix) langs.push_back(l + ":" + num(p));
    cfg.set("stream.lang_mix", join(langs, ","));
    cfg.set("stream.keyword_placement", fmt::format("in_text:{},url_only:{},none:{}", s.keyword_placement.in_text,
                                                    s.keyword_placement.url_only, s.keyword_placement.none));
    cfg.set("stream.keywords", join(s.keywords, ","));
    std::vector<std::string> bursts;
    for (const auto& b : s.burst_profile)
        bursts.push_back(fmt::format("{}/{}/{}", format_duration(b.start), format_duration(b.length), b.multiplier));
    cfg.set("stream.bursts", bursts.empty() ? "none" : join(bursts, ";"));
    cfg.set("stream.mention_probability", num(s.mention_probability));
    cfg.set("stream.hashtag_probability", num(s.hashtag_probability));
    cfg.set("stream.url_probability", num(s.url_probability));
    cfg.set("stream.topic_hashtags", std::to_string(s.topic_hashtags));
    cfg.set("stream.vocabulary_hashtags", std::to_string(s.vocabulary_hashtags));
    cfg.set("stream.recency_scale", num(s.recency_scale));
    cfg.set("stream.popular_target_share", num(s.popular_target_share));
    cfg.set("stream.communities", std::to_string(s.communities));
    cfg.set("stream.community_affinity", num(s.community_affinity));
    cfg.set("stream.exact_posts", s.exact_posts ? std::to_string(*s.exact_posts) : "none");
    cfg.set("stream.exact_mix", s.exact_mix ? "true" : "false");
    cfg.set("stream.every_account_posts", s.every_account_posts ? "true" : "false");

    std::vector<std::string> names;
    for (const auto& p : sc.profiles) {
        names.push_back(p.name);
        const std::string pre = "collector." + p.name + ".";
        cfg.set(pre + "scope", std::string(to_string(p.match_scope)));
        cfg.set(pre + "keywords", join(p.keywords, ","));
        cfg.set(pre + "rate_limit", p.rate_limit ? std::to_string(*p.rate_limit) : "none");
        std::vector<std::string> outs;
        for (const auto& o : p.outages) outs.push_back(format_timestamp(o.start) + "/" + format_duration(o.duration));
        cfg.set(pre + "outages", outs.empty() ? "none" : join(outs, ";"));
        cfg.set(pre + "topic_tracking",
                p.topic_tracking
                    ? fmt::format("{}/{}", p.topic_tracking->threshold, format_duration(p.topic_tracking->window))
                    : "off");
        cfg.set(pre + "duplicate_rate", num(p.duplicate_rate));
    }
    cfg.set("collectors", join(names, ","));
    return cfg;
}

Scenario scenario_from_config(const KeyValueConfig& cfg) {
    const auto collector_names = split(cfg.get_or("collectors", ""), ',');
    cfg.check_keys([&](const std::string& k) {
        if (k == "scenario.name" || k == "scenario.description" || k == "scenario.collector_seed" || k == "collectors")
            return true;
        if (k.rfind("stream.", 0) == 0)
            return std::find(kStreamKeys.begin(), kStreamKeys.end(), k.substr(7)) != kStreamKeys.end();
        for (const auto& n : collector_names) {
            const std::string pre = "collector." + n + ".";
            if (k.rfind(pre, 0) == 0)
                return std::find(kCollectorKeys.begin(), kCollectorKeys.end(), k.substr(pre.size())) != kCollectorKeys.end();
        }
        return false;
    });

    Scenario sc;
    sc.name = cfg.get_or("scenario.name", "custom");
    sc.description = cfg.get_or("scenario.description", "");
    sc.collector_seed = static_cast<std::uint64_t>(cfg.get_int("scenario.collector_seed", 1));
    auto& s = sc.stream;
    s.seed = static_cast<std::uint64_t>(cfg.get_int("stream.seed", static_cast<long long>(s.seed)));
    if (auto v = cfg.get("stream.start")) s.start = require_timestamp("stream.start", *v);
    if (auto v = cfg.get("stream.duration")) s.duration = require_duration("stream.duration", *v);
    s.accounts = require_count(cfg, "stream.accounts", s.accounts);
    s.activity_exponent = cfg.get_double("stream.activity_exponent", s.activity_exponent);
    s.max_activity = require_count(cfg, "stream.max_activity", s.max_activity);
    s.base_rate = cfg.get_double("stream.base_rate", s.base_rate);
    if (cfg.has("stream.mix")) {
        auto w = parse_weights(cfg, "stream.mix", {"original", "retweet", "quote", "reply"});
        s.mix = {w["original"], w["retweet"], w["quote"], w["reply"]};
    }
    if (cfg.has("stream.lang_mix")) {
        s.lang_mix.clear();
        // Keep the written order; it fixes the sampler layout.
        for (const auto& item : split(cfg.require("stream.lang_mix"), ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ConfigError("stream.lang_mix", "expected lang:probability");
            KeyValueConfig one;
            one.set("stream.lang_mix", item.substr(colon + 1));
            s.lang_mix.emplace_back(trim(std::string_view(item).substr(0, colon)), one.get_double("stream.lang_mix", 0.0));
        }
    }
    if (cfg.has("stream.keyword_placement")) {
        auto w = parse_weights(cfg, "stream.keyword_placement", {"in_text", "url_only", "none"});
        s.keyword_placement = {w["in_text"], w["url_only"], w["none"]};
    }
    if (auto v = cfg.get("stream.keywords")) s.keywords = split(*v, ',');
    if (auto v = cfg.get("stream.bursts"); v && *v != "none") {
        s.burst_profile.clear();
        for (const auto& item : split(*v, ';')) {
            auto f = split(item, '/');
            if (f.size() != 3) throw ConfigError("stream.bursts", "expected offset/length/multiplier");
            KeyValueConfig one;
            one.set("m", f[2]);
            s.burst_profile.push_back({require_duration("stream.bursts", f[0]), require_duration("stream.bursts", f[1]),
                                       one.get_double("m", 1.0)});
        }
    } else if (v) {
        s.burst_profile.clear();
    }
    s.mention_probability = cfg.get_double("stream.mention_probability", s.mention_probability);
    s.hashtag_probability = cfg.get_double("stream.hashtag_probability", s.hashtag_probability);
    s.url_probability = cfg.get_double("stream.url_probability", s.url_probability);
    s.topic_hashtags = require_count(cfg, "stream.topic_hashtags", s.topic_hashtags);
    s.vocabulary_hashtags = require_count(cfg, "stream.vocabulary_hashtags", s.vocabulary_hashtags);
    s.recency_scale = cfg.get_double("stream.recency_scale", s.recency_scale);
    s.popular_target_share = cfg.get_double("stream.popular_target_share", s.popular_target_share);
    s.communities = require_count(cfg, "stream.communities", s.communities);
    s.community_affinity = cfg.get_double("stream.community_affinity", s.community_affinity);
    if (auto v = cfg.get("stream.exact_posts"); v && *v != "none") s.exact_posts = require_count(cfg, "stream.exact_posts", 0);
    s.exact_mix = cfg.get_bool("stream.exact_mix", false);
    s.every_account_posts = cfg.get_bool("stream.every_account_posts", false);
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("stream", e.what());
    }

    for (const auto& n : collector_names) {
        const std::string pre = "collector." + n + ".";
        CollectorProfile p;
        p.name = n;
        if (auto v = cfg.get(pre + "scope")) {
            auto scope = parse_match_scope(*v);
            if (!scope) throw ConfigError(pre + "scope", "expected text or full");
            p.match_scope = *scope;
        }
        p.keywords = split(cfg.get_or(pre + "keywords", join(s.keywords, ",")), ',');
        if (auto v = cfg.get(pre + "rate_limit"); v && *v != "none") p.rate_limit = require_count(cfg, pre + "rate_limit", 0);
        if (auto v = cfg.get(pre + "outages"); v && *v != "none") {
            for (const auto& item : split(*v, ';')) {
                const auto slash = item.rfind('/');
                if (slash == std::string::npos) throw ConfigError(pre + "outages", "expected start/duration");
                p.outages.push_back({require_timestamp(pre + "outages", item.substr(0, slash)),
                                     require_duration(pre + "outages", item.substr(slash + 1))});
            }
        }
        if (auto v = cfg.get(pre + "topic_tracking"); v && *v != "off") {
            auto f = split(*v, '/');
            if (f.size() != 2) throw ConfigError(pre + "topic_tracking", "expected threshold/window or off");
            KeyValueConfig one;
            one.set("t", f[0]);
            const long long th = one.get_int("t", 0);
            if (th < 1) throw ConfigError(pre + "topic_tracking", "threshold must be >= 1");
            p.topic_tracking = TopicTracking{static_cast<std::size_t>(th), require_duration(pre + "topic_tracking", f[1])};
        }
        p.duplicate_rate = cfg.get_double(pre + "duplicate_rate", 0.0);
        try {
            p.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(pre.substr(0, pre.size() - 1), e.what());
        }
        sc.profiles.push_back(std::move(p));
    }
    return sc;
}

}  // namespace streamcmp
