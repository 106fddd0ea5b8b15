#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tikreg/types.hpp"

namespace tikreg {

// Flat sectioned key-value configuration:
//
//   # comment (also ';')
//   [section]
//   key = value
//
// Keys are addressed as "section.key"; keys before any section header have
// no prefix. Later assignments win, which is how CLI overrides are applied.
class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get(const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& key,
                                      const std::vector<std::string>& fallback) const;

    // Sorted "key = value" lines; the form that is hashed.
    std::string canonical() const;
    std::uint64_t hash() const;  // FNV-1a over canonical()
    std::string hash_hex() const;

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace tikreg
