#include "streamcmp/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <unordered_set>

#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace streamcmp {

using nlohmann::json;

namespace {

constexpr std::array kKnownKeys = {"id",         "author_id", "author_screen_name", "created_at",
                                   "text",       "lang",      "hashtags",           "mentions",
                                   "urls",       "retweet_of", "quote_of",          "reply_to"};

bool is_known_key(std::string_view key) {
    return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

// Identifiers may arrive as JSON strings or unsigned integers.
std::optional<std::string> read_id(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    return std::nullopt;
}

std::optional<std::string> read_string(const json& obj, const char* key, std::string fallback) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return fallback;
    if (!it->is_string()) return std::nullopt;
    return it->get<std::string>();
}

bool read_string_array(const json& obj, const char* key, std::vector<std::string>& out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return true;
    if (!it->is_array()) return false;
    for (const auto& v : *it) {
        if (!v.is_string()) return false;
        out.push_back(v.get<std::string>());
    }
    return true;
}

// Missing/null → nullopt ref (ok); wrong type → failure.
bool read_ref(const json& obj, const char* key, std::optional<TweetRef>& out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return true;
    if (!it->is_object()) return false;
    TweetRef ref;
    if (auto id = it->find("id"); id != it->end() && !id->is_null()) {
        auto s = read_id(*id);
        if (!s) return false;
        ref.tweet_id = *s;
    }
    if (auto a = it->find("author_id"); a != it->end() && !a->is_null()) {
        auto s = read_id(*a);
        if (!s) return false;
        ref.author_id = *s;
    }
    if (!ref.tweet_id.empty() || !ref.author_id.empty()) out = std::move(ref);
    return true;
}

json ref_to_json(const std::optional<TweetRef>& ref) {
    if (!ref) return nullptr;
    json j = json::object();
    j["id"] = ref->tweet_id;
    j["author_id"] = ref->author_id;
    return j;
}

std::string casefold_tag(std::string_view tag) {
    if (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
    return to_lower_ascii(tag);
}

bool contains(std::string_view haystack_lower, std::string_view needle_lower) {
    return haystack_lower.find(needle_lower) != std::string_view::npos;
}

bool any_keyword_in(std::string_view field, const std::vector<std::string>& lowered) {
    if (field.empty()) return false;
    const std::string lower = to_lower_ascii(field);
    for (const auto& k : lowered)
        if (contains(lower, k)) return true;
    return false;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

Corpus::Corpus(std::string label, std::vector<TweetRecord> records, IngestStats stats)
    : label_(std::move(label)), stats_(stats) {
    std::unordered_set<std::string> seen;
    seen.reserve(records.size());
    records_.reserve(records.size());
    for (auto& r : records) {
        if (seen.insert(r.tweet_id).second)
            records_.push_back(std::move(r));
        else
            ++stats_.duplicates;
    }
    std::stable_sort(records_.begin(), records_.end(), [](const TweetRecord& a, const TweetRecord& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.tweet_id < b.tweet_id;
    });
}

Corpus Corpus::relabeled(std::string label) const {
    Corpus c = *this;
    c.label_ = std::move(label);
    return c;
}

std::optional<TweetRecord> parse_plx_line(std::string_view line) {
    json obj = json::parse(line.begin(), line.end(), nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) return std::nullopt;

    TweetRecord r;
    auto id = obj.find("id");
    auto author = obj.find("author_id");
    auto created = obj.find("created_at");
    if (id == obj.end() || author == obj.end() || created == obj.end()) return std::nullopt;
    auto id_s = read_id(*id);
    auto author_s = read_id(*author);
    if (!id_s || id_s->empty() || !author_s || author_s->empty()) return std::nullopt;
    r.tweet_id = std::move(*id_s);
    r.author_id = std::move(*author_s);

    if (!created->is_string()) return std::nullopt;
    auto ts = parse_timestamp(created->get_ref<const std::string&>());
    if (!ts) return std::nullopt;
    r.created_at = *ts;

    auto sn = read_string(obj, "author_screen_name", "");
    auto text = read_string(obj, "text", "");
    auto lang = read_string(obj, "lang", "und");
    if (!sn || !text || !lang) return std::nullopt;
    r.author_screen_name = std::move(*sn);
    r.text = std::move(*text);
    r.lang = lang->empty() ? "und" : std::move(*lang);

    std::vector<std::string> tags;
    if (!read_string_array(obj, "hashtags", tags)) return std::nullopt;
    for (const auto& t : tags) r.hashtags.push_back(casefold_tag(t));
    if (!read_string_array(obj, "urls", r.urls)) return std::nullopt;

    if (auto m = obj.find("mentions"); m != obj.end() && !m->is_null()) {
        if (!m->is_array()) return std::nullopt;
        for (const auto& e : *m) {
            if (!e.is_object()) return std::nullopt;
            Mention mention;
            auto mid = e.find("id");
            if (mid == e.end()) return std::nullopt;
            auto mid_s = read_id(*mid);
            if (!mid_s || mid_s->empty()) return std::nullopt;
            mention.account_id = std::move(*mid_s);
            auto msn = read_string(e, "screen_name", "");
            if (!msn) return std::nullopt;
            mention.screen_name = std::move(*msn);
            r.mentions.push_back(std::move(mention));
        }
    }

    if (!read_ref(obj, "retweet_of", r.retweet_of) || !read_ref(obj, "quote_of", r.quote_of) ||
        !read_ref(obj, "reply_to", r.reply_to))
        return std::nullopt;

    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!is_known_key(it.key())) r.raw_extra[it.key()] = it.value();
    return r;
}

std::string to_plx_line(const TweetRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.tweet_id;
    j["author_id"] = r.author_id;
    j["author_screen_name"] = r.author_screen_name;
    j["created_at"] = format_timestamp(r.created_at);
    j["text"] = r.text;
    j["lang"] = r.lang;
    j["hashtags"] = r.hashtags;
    auto mentions = nlohmann::ordered_json::array();
    for (const auto& m : r.mentions)
        mentions.push_back({{"id", m.account_id}, {"screen_name", m.screen_name}});
    j["mentions"] = std::move(mentions);
    j["urls"] = r.urls;
    j["retweet_of"] = ref_to_json(r.retweet_of);
    j["quote_of"] = ref_to_json(r.quote_of);
    j["reply_to"] = ref_to_json(r.reply_to);
    for (auto it = r.raw_extra.begin(); it != r.raw_extra.end(); ++it) j[it.key()] = it.value();
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

Corpus ingest(std::istream& in, std::string label) {
    IngestStats stats;
    std::vector<TweetRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (true) {
        if (!std::getline(in, line)) {
            if (in.bad()) throw IngestError("read failure at line " + std::to_string(line_no + 1), line_no + 1);
            break;
        }
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        ++stats.lines;
        if (auto rec = parse_plx_line(line)) {
            ++stats.parsed;
            records.push_back(std::move(*rec));
        } else {
            ++stats.malformed;
        }
    }
    return Corpus(std::move(label), std::move(records), stats);
}

Corpus ingest_file(const std::string& path, std::string label) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open " + path, 0);
    return ingest(in, std::move(label));
}

void write_plx(std::ostream& out, const std::vector<TweetRecord>& records) {
    for (const auto& r : records) out << to_plx_line(r) << '\n';
}

void write_plx(std::ostream& out, const Corpus& corpus) { write_plx(out, corpus.records()); }

Corpus filter_by_lang(const Corpus& corpus, const std::set<std::string>& allowed) {
    if (allowed.empty()) throw std::invalid_argument("filter_by_lang: allowed language set is empty");
    std::vector<TweetRecord> kept;
    for (const auto& r : corpus)
        if (allowed.count(r.lang)) kept.push_back(r);
    return Corpus(corpus.label() + "-lang", std::move(kept), corpus.ingest_stats());
}

std::optional<MatchScope> parse_match_scope(std::string_view s) {
    if (s == "text" || s == "text-fields") return MatchScope::text_fields;
    if (s == "full" || s == "full-record") return MatchScope::full_record;
    return std::nullopt;
}

std::string_view to_string(MatchScope scope) {
    return scope == MatchScope::text_fields ? "text-fields" : "full-record";
}

bool matches_keywords(const TweetRecord& r, const std::vector<std::string>& kw, MatchScope scope) {
    if (any_keyword_in(r.text, kw) || any_keyword_in(r.author_screen_name, kw)) return true;
    for (const auto& t : r.hashtags)
        if (any_keyword_in(t, kw)) return true;
    if (scope == MatchScope::text_fields) return false;
    for (const auto& u : r.urls)
        if (any_keyword_in(u, kw)) return true;
    for (const auto& m : r.mentions)
        if (any_keyword_in(m.screen_name, kw)) return true;
    return !r.raw_extra.empty() && any_keyword_in(r.raw_extra.dump(), kw);
}

Corpus filter_by_keywords(const Corpus& corpus, const std::vector<std::string>& keywords,
                          MatchScope scope) {
    if (keywords.empty()) throw std::invalid_argument("filter_by_keywords: no keywords");
    std::vector<std::string> lowered;
    for (const auto& k : keywords) lowered.push_back(to_lower_ascii(k));
    std::vector<TweetRecord> kept;
    for (const auto& r : corpus)
        if (matches_keywords(r, lowered, scope)) kept.push_back(r);
    return Corpus(corpus.label(), std::move(kept), corpus.ingest_stats());
}

namespace {

class Pseudonymizer {
public:
    explicit Pseudonymizer(std::string_view key) : key_(key) {}

    std::string account(const std::string& id) const {
        if (id.empty()) return id;
        return "a" + digest("id:" + id, 8);
    }
    std::string handle(std::string_view screen_name) const {
        if (screen_name.empty()) return std::string{};
        return "anon_" + digest("sn:" + to_lower_ascii(screen_name), 6);
    }

    // Rewrites @handles the way the platform tokenizes them: an '@' not
    // preceded by a word character, followed by [A-Za-z0-9_]+.
    std::string text(std::string_view s) const {
        std::string out;
        out.reserve(s.size());
        std::size_t i = 0;
        while (i < s.size()) {
            if (s[i] == '@' && (i == 0 || !is_handle_char(s[i - 1]))) {
                std::size_t j = i + 1;
                while (j < s.size() && is_handle_char(s[j])) ++j;
                if (j > i + 1) {
                    out += '@';
                    out += handle(s.substr(i + 1, j - i - 1));
                    i = j;
                    continue;
                }
            }
            out += s[i++];
        }
        return out;
    }

private:
    static bool is_handle_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    }

    std::string digest(const std::string& msg, std::size_t bytes) const {
        unsigned char mac[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        HMAC(EVP_sha256(), key_.data(), static_cast<int>(key_.size()),
             reinterpret_cast<const unsigned char*>(msg.data()), msg.size(), mac, &len);
        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        for (std::size_t i = 0; i < bytes && i < len; ++i) {
            out += hex[mac[i] >> 4];
            out += hex[mac[i] & 0xF];
        }
        return out;
    }

    std::string key_;
};

void anonymize_ref(std::optional<TweetRef>& ref, const Pseudonymizer& p) {
    if (ref) ref->author_id = p.account(ref->author_id);
}

}  // namespace

Corpus anonymize(const Corpus& corpus, std::string_view key) {
    if (key.empty()) throw std::invalid_argument("anonymize: empty key");
    Pseudonymizer p(key);
    std::vector<TweetRecord> out;
    out.reserve(corpus.size());
    for (auto r : corpus) {
        r.author_id = p.account(r.author_id);
        r.author_screen_name = p.handle(r.author_screen_name);
        r.text = p.text(r.text);
        for (auto& m : r.mentions) {
            m.account_id = p.account(m.account_id);
            m.screen_name = p.handle(m.screen_name);
        }
        anonymize_ref(r.retweet_of, p);
        anonymize_ref(r.quote_of, p);
        anonymize_ref(r.reply_to, p);
        r.raw_extra = json::object();
        out.push_back(std::move(r));
    }
    return Corpus(corpus.label(), std::move(out), corpus.ingest_stats());
}

}  // namespace streamcmp
