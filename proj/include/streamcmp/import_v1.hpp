#pragma once

#include <istream>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "streamcmp/corpus.hpp"

namespace streamcmp {

/// Maps one platform v1.1 status object onto a PLX-1 record.
///
///   id_str (or id)                          -> id
///   user.id_str, user.screen_name           -> author_id, author_screen_name
///   created_at "Wed Oct 10 20:19:24 +0000 2018" -> created_at (UTC)
///   extended_tweet.full_text | full_text | text -> text
///   lang                                    -> lang ("und" when absent)
///   entities.hashtags[].text                -> hashtags, case-folded
///   entities.user_mentions[]                -> mentions {id_str, screen_name}
///   entities.urls[].expanded_url (or url)   -> urls
///   retweeted_status {id_str, user.id_str}  -> retweet_of
///   quoted_status, else quoted_status_id_str -> quote_of
///   in_reply_to_status_id_str, in_reply_to_user_id_str -> reply_to
///   source                                  -> raw_extra.source
///
/// Entities come from extended_tweet when present. Everything else in the
/// payload is dropped. Returns nullopt when id, author or time is missing.
std::optional<TweetRecord> from_v1_status(const nlohmann::json& status);

/// Parses the v1.1 created_at format. Only the +0000 offset is accepted.
std::optional<Timestamp> parse_v1_timestamp(std::string_view text);

/// Reads newline-delimited v1.1 payloads; unparseable lines are counted as
/// malformed, as in ingest().
Corpus import_v1(std::istream& in, std::string label);

}  // namespace streamcmp
