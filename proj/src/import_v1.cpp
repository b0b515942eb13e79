#include "streamcmp/import_v1.hpp"

#include <array>
#include <charconv>
#include <string>

#include <fmt/format.h>

namespace streamcmp {

using nlohmann::json;

namespace {

std::string str_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
    return {};
}

std::string id_of(const json& obj) {
    auto s = str_field(obj, "id_str");
    return s.empty() ? str_field(obj, "id") : s;
}

std::optional<TweetRef> ref_of(const json& status) {
    if (!status.is_object()) return std::nullopt;
    TweetRef r{id_of(status), {}};
    if (auto u = status.find("user"); u != status.end() && u->is_object()) r.author_id = id_of(*u);
    if (r.tweet_id.empty()) return std::nullopt;
    return r;
}

int to_int(std::string_view s) {
    int v = -1;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && p == s.data() + s.size() ? v : -1;
}

}  // namespace

std::optional<Timestamp> parse_v1_timestamp(std::string_view t) {
    // "Wed Oct 10 20:19:24 +0000 2018"
    if (t.size() != 30 || t[3] != ' ' || t[7] != ' ' || t[10] != ' ' || t[19] != ' ' || t[25] != ' ') return std::nullopt;
    if (t.substr(20, 5) != "+0000") return std::nullopt;
    static constexpr std::array<std::string_view, 12> months{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                             "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    int mo = 0;
    while (mo < 12 && months[static_cast<std::size_t>(mo)] != t.substr(4, 3)) ++mo;
    if (mo == 12) return std::nullopt;
    const auto iso = fmt::format("{}-{:02d}-{}T{}Z", t.substr(26, 4), mo + 1, t.substr(8, 2), t.substr(11, 8));
    if (to_int(t.substr(26, 4)) < 0) return std::nullopt;
    return parse_timestamp(iso);
}

std::optional<TweetRecord> from_v1_status(const json& s) {
    if (!s.is_object()) return std::nullopt;
    TweetRecord r;
    r.tweet_id = id_of(s);
    auto user = s.find("user");
    if (user == s.end() || !user->is_object()) return std::nullopt;
    r.author_id = id_of(*user);
    r.author_screen_name = str_field(*user, "screen_name");
    auto ts = parse_v1_timestamp(str_field(s, "created_at"));
    if (r.tweet_id.empty() || r.author_id.empty() || !ts) return std::nullopt;
    r.created_at = *ts;

    const json* ext = nullptr;
    if (auto e = s.find("extended_tweet"); e != s.end() && e->is_object()) ext = &*e;
    r.text = ext ? str_field(*ext, "full_text") : "";
    if (r.text.empty()) r.text = str_field(s, "full_text");
    if (r.text.empty()) r.text = str_field(s, "text");
    if (auto lang = str_field(s, "lang"); !lang.empty()) r.lang = lang;

    const json* entities = nullptr;
    if (ext && ext->contains("entities") && (*ext)["entities"].is_object()) entities = &(*ext)["entities"];
    else if (s.contains("entities") && s["entities"].is_object()) entities = &s["entities"];
    auto list = [&](const char* key) -> const json* {
        if (!entities) return nullptr;
        auto it = entities->find(key);
        return it != entities->end() && it->is_array() ? &*it : nullptr;
    };
    if (auto* tags = list("hashtags"))
        for (const auto& h : *tags)
            if (h.is_object()) r.hashtags.push_back(to_lower_ascii(str_field(h, "text")));
    if (auto* ms = list("user_mentions"))
        for (const auto& m : *ms)
            if (m.is_object()) r.mentions.push_back({id_of(m), str_field(m, "screen_name")});
    if (auto* us = list("urls"))
        for (const auto& u : *us) {
            if (!u.is_object()) continue;
            auto url = str_field(u, "expanded_url");
            if (url.empty()) url = str_field(u, "url");
            if (!url.empty()) r.urls.push_back(url);
        }

    if (auto rt = s.find("retweeted_status"); rt != s.end()) r.retweet_of = ref_of(*rt);
    if (auto q = s.find("quoted_status"); q != s.end()) r.quote_of = ref_of(*q);
    if (!r.quote_of)
        if (auto qid = str_field(s, "quoted_status_id_str"); !qid.empty()) r.quote_of = TweetRef{qid, {}};
    if (auto rid = str_field(s, "in_reply_to_status_id_str"); !rid.empty())
        r.reply_to = TweetRef{rid, str_field(s, "in_reply_to_user_id_str")};
    if (auto src = str_field(s, "source"); !src.empty()) r.raw_extra["source"] = src;
    return r;
}

Corpus import_v1(std::istream& in, std::string label) {
    IngestStats stats;
    std::vector<TweetRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++stats.lines;
        auto j = json::parse(line, nullptr, false);
        auto r = j.is_discarded() ? std::nullopt : from_v1_status(j);
        if (!r) {
            ++stats.malformed;
            continue;
        }
        ++stats.parsed;
        records.push_back(std::move(*r));
    }
    if (in.bad()) throw IngestError("read error", stats.lines);
    return Corpus(std::move(label), std::move(records), stats);
}

}  // namespace streamcmp
