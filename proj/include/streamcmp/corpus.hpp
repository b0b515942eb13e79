#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "streamcmp/timeutil.hpp"

namespace streamcmp {

/// Reference to another post: its id and, when known, its author.
struct TweetRef {
    std::string tweet_id;
    std::string author_id;

    bool operator==(const TweetRef&) const = default;
};

struct Mention {
    std::string account_id;
    std::string screen_name;

    bool operator==(const Mention&) const = default;
};

/// One post, in the fields the comparison battery observes.
struct TweetRecord {
    std::string tweet_id;
    std::string author_id;
    std::string author_screen_name;
    Timestamp created_at{};
    std::string text;
    std::string lang = "und";
    std::vector<std::string> hashtags;  // case-folded
    std::vector<Mention> mentions;
    std::vector<std::string> urls;
    std::optional<TweetRef> retweet_of;
    std::optional<TweetRef> quote_of;
    std::optional<TweetRef> reply_to;
    nlohmann::json raw_extra = nlohmann::json::object();

    // A record carrying both retweet_of and quote_of is a native retweet.
    bool is_retweet() const { return retweet_of.has_value(); }
    bool is_quote() const { return quote_of.has_value() && !retweet_of.has_value(); }
    // Replies count even when the target post is outside the corpus.
    bool is_reply() const { return reply_to.has_value() && !reply_to->tweet_id.empty(); }

    bool operator==(const TweetRecord&) const = default;
};

struct IngestStats {
    std::size_t lines = 0;  // non-empty lines seen
    std::size_t parsed = 0;
    std::size_t duplicates = 0;
    std::size_t malformed = 0;

    bool operator==(const IngestStats&) const = default;
};

class IngestError : public std::runtime_error {
public:
    IngestError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Deduplicated, time-ordered collection of posts with a provenance label.
///
/// Records are sorted by (created_at, tweet_id) and tweet ids are unique;
/// duplicates passed to the constructor keep their first occurrence.
class Corpus {
public:
    Corpus() = default;
    Corpus(std::string label, std::vector<TweetRecord> records, IngestStats stats = {});

    const std::string& label() const { return label_; }
    const std::vector<TweetRecord>& records() const { return records_; }
    const IngestStats& ingest_stats() const { return stats_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    auto begin() const { return records_.begin(); }
    auto end() const { return records_.end(); }

    Corpus relabeled(std::string label) const;

private:
    std::string label_;
    std::vector<TweetRecord> records_;
    IngestStats stats_;
};

/// Parses one PLX-1 line. Returns nullopt when the line is malformed.
std::optional<TweetRecord> parse_plx_line(std::string_view line);

/// Serializes a record as one PLX-1 line (no trailing newline). Field order
/// is fixed; raw_extra keys follow in sorted order.
std::string to_plx_line(const TweetRecord& record);

/// Reads a PLX-1 stream. Malformed lines are counted and skipped; an I/O
/// fault throws IngestError carrying the line number reached.
Corpus ingest(std::istream& in, std::string label);
Corpus ingest_file(const std::string& path, std::string label);

void write_plx(std::ostream& out, const std::vector<TweetRecord>& records);
void write_plx(std::ostream& out, const Corpus& corpus);

Corpus filter_by_lang(const Corpus& corpus, const std::set<std::string>& allowed);

enum class MatchScope { text_fields, full_record };

std::optional<MatchScope> parse_match_scope(std::string_view s);
std::string_view to_string(MatchScope scope);

/// Case-insensitive substring match of any keyword within the record fields
/// selected by `scope`. text_fields covers text, author screen name and
/// hashtags; full_record adds urls, mention screen names and raw_extra.
bool matches_keywords(const TweetRecord& record, const std::vector<std::string>& lowered_keywords,
                      MatchScope scope);

Corpus filter_by_keywords(const Corpus& corpus, const std::vector<std::string>& keywords,
                          MatchScope scope);

/// Replaces account ids and screen names (including @handles in text) by
/// HMAC-SHA256 pseudonyms under `key`. raw_extra is dropped since it may
/// carry identifiers the model cannot see.
Corpus anonymize(const Corpus& corpus, std::string_view key);

std::string to_lower_ascii(std::string_view s);

}  // namespace streamcmp
