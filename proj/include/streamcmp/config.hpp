#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streamcmp {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what) : std::runtime_error(key + ": " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Flat `key = value` file. `#` starts a comment line; keys are unique.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig load(const std::string& path);

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    const std::string& require(const std::string& key) const;

    std::string get_or(const std::string& key, std::string fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

    /// Throws ConfigError on the first key not accepted by `allowed`.
    template <typename Pred>
    void check_keys(Pred allowed) const {
        for (const auto& [k, v] : values_)
            if (!allowed(k)) throw ConfigError(k, "unknown key");
    }

    void write(std::ostream& out) const;

private:
    std::map<std::string, std::string> values_;
};

std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);

}  // namespace streamcmp
