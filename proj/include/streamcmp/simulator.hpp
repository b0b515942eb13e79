#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "streamcmp/config.hpp"
#include "streamcmp/corpus.hpp"

namespace streamcmp {

/// Rate multiplier applied over [start, start + length) from stream start.
struct BurstWindow {
    Seconds start{};
    Seconds length{};
    double multiplier = 1.0;
};

struct PostMix {
    double original = 0.4;
    double retweet = 0.5;
    double quote = 0.04;
    double reply = 0.06;
};

struct KeywordPlacement {
    double in_text = 1.0;
    double url_only = 0.0;
    double none = 0.0;
};

/// Ground-truth stream description.
struct StreamSpec {
    std::uint64_t seed = 1;
    Timestamp start = Timestamp{Seconds{1541667600}};  // 2018-11-08T09:00:00Z
    Seconds duration = Seconds{4 * 3600};
    std::size_t accounts = 5000;
    double activity_exponent = 2.0;  // discrete power law over [1, max_activity]
    std::size_t max_activity = 1000;
    PostMix mix;
    std::vector<std::pair<std::string, double>> lang_mix{{"en", 1.0}};
    KeywordPlacement keyword_placement;
    std::vector<std::string> keywords{"qanda"};
    std::vector<BurstWindow> burst_profile;
    double base_rate = 100.0;  // posts per minute
    double mention_probability = 0.3;
    double hashtag_probability = 0.5;
    double url_probability = 0.15;
    std::size_t topic_hashtags = 8;
    std::size_t vocabulary_hashtags = 200;
    double recency_scale = 300.0;      // mean look-back, in posts, when picking a target
    double popular_target_share = 0.4;  // chance a retweet re-targets an already retweeted post
    // Accounts split into communities that mention, reply to and retweet
    // each other preferentially. 0 disables.
    std::size_t communities = 0;
    double community_affinity = 0.6;

    // Calibration knobs for fixtures that must hit exact totals.
    std::optional<std::size_t> exact_posts;  // fixed count, times uniform over the window
    bool exact_mix = false;                  // type counts = round(p * posts)
    bool every_account_posts = false;        // each account authors at least one post

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

/// Deterministic for a fixed spec. Retweets, quotes and replies reference
/// earlier posts with recency-biased choice.
Corpus generate_stream(const StreamSpec& spec, std::string label = "truth");

struct Outage {
    Timestamp start{};
    Seconds duration{};

    bool contains(Timestamp t) const { return t >= start && t < start + duration; }
};

struct TopicTracking {
    std::size_t threshold = 5;
    Seconds window = Seconds{600};
};

/// Behavior model of one collection tool.
struct CollectorProfile {
    std::string name;
    MatchScope match_scope = MatchScope::full_record;
    std::vector<std::string> keywords;
    std::optional<std::size_t> rate_limit;  // posts per clock minute
    std::vector<Outage> outages;
    std::optional<TopicTracking> topic_tracking;
    double duplicate_rate = 0.0;

    void validate() const;
};

struct CollectorCounters {
    std::size_t unmatched = 0;
    std::size_t outage_dropped = 0;
    std::size_t rate_limited = 0;
    std::size_t duplicates_emitted = 0;
    std::vector<std::string> expanded_terms;  // in order of activation
};

struct CollectorResult {
    Corpus corpus;                      // deduplicated view
    std::vector<TweetRecord> emitted;   // raw emission order, duplicates included
    CollectorCounters counters;
};

/// Applies, per record in time order: keyword match at the profile scope
/// (against the current, possibly expanded, term set); outage drop;
/// per-minute head-of-window rate limit; topic-tracking update from the
/// collected record's hashtags; duplicate re-emission.
CollectorResult apply_collector(const Corpus& truth, const CollectorProfile& profile, std::uint64_t seed);

struct Scenario {
    std::string name;
    std::string description;
    StreamSpec stream;
    std::vector<CollectorProfile> profiles;
    std::uint64_t collector_seed = 1;
};

struct ScenarioRun {
    Corpus truth;
    std::vector<CollectorResult> collected;  // one per profile, same order
};

std::vector<std::string> scenario_names();

/// Built-in calibrated scenarios. Throws std::invalid_argument listing the
/// valid names for anything else. `seed`, when given, reseeds the stream
/// and the collectors.
Scenario builtin_scenario(std::string_view name, std::optional<std::uint64_t> seed = std::nullopt);

ScenarioRun run_scenario(const Scenario& scenario);

/// Manifest round trip (flat key-value form). Unknown keys are fatal.
KeyValueConfig scenario_to_config(const Scenario& scenario);
Scenario scenario_from_config(const KeyValueConfig& config);

}  // namespace streamcmp
