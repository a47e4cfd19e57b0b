#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbmlab::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

// Flat key=value parameters. Values from a config file are applied first,
// command-line overrides after (later wins). Every key read through a
// getter is marked used; unused keys are reported by check_all_used().
class RunConfig {
public:
    void load_file(const std::string& path);
    // "key=value"
    void apply(const std::string& assignment);
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    std::vector<std::string> keys() const;

    double number(const std::string& key, double fallback);
    double number(const std::string& key);
    std::int64_t integer(const std::string& key, std::int64_t fallback);
    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
    std::string text(const std::string& key, const std::string& fallback);
    std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);

    void check_all_used() const;

    // Resolved parameters (only keys read so far, plus defaults that were
    // materialized), sorted by key.
    const std::map<std::string, std::string>& resolved() const { return resolved_; }

private:
    std::string lookup(const std::string& key, const std::string& fallback);

    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> resolved_;
};

std::string to_string(Format f);
Format format_from(const std::string& s);

}  // namespace rbmlab::cli
