#pragma once

// =============================================================================
// fluxqed - Flat key/value configuration
// =============================================================================
// One "key = value" pair per line; '#' starts a comment. Lists are comma
// separated. Units: lengths in meters, frequencies in GHz, impedance in ohms.
// =============================================================================

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxqed {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config parse(std::istream& in, const std::string& origin = "<stream>");
    static Config parse_string(const std::string& text);
    static Config load(const std::string& path);

    /// Throws ConfigError for keys outside the documented set.
    void set(const std::string& key, const std::string& value);
    /// Applies a "key=value" override.
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<int> get_ints(const std::string& key) const;

    /// Sorted "key=value" lines; the hash input.
    std::string canonical() const;
    /// FNV-1a of canonical(), as 16 hex digits.
    std::string hash() const;

    const std::map<std::string, std::string>& entries() const { return values_; }

    static const std::vector<std::string>& known_keys();

private:
    std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace fluxqed
