#pragma once
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace gapfill {

// Flat `key = value` file; `#` starts a comment; keys may be dotted.
class Config {
public:
    static Config parse(std::istream& in);
    static Config load(const std::string& path);  // IoError if unreadable

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::map<std::string, std::string>& values() const { return values_; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    // Comma-separated list; empty entries are rejected.
    std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback) const;
    // Comma-separated integers or an inclusive range "a..b".
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

    // Throws ConfigError for the first key not in `known`.
    void require_known(const std::vector<std::string>& known) const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace gapfill
