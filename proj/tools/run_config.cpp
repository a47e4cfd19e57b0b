#include "run_config.hpp"

#include <rbmlab/extended_real.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rbmlab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& v) {
    if (v == "inf") return INFINITY;
    if (v == "-inf") return -INFINITY;
    double x = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError("parameter '" + key + "': '" + v + "' is not a number");
    return x;
}

}  // namespace

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.find('=') == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(n) + ": expected key=value");
        apply(line);
    }
}

void RunConfig::apply(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::vector<std::string> RunConfig::keys() const {
    std::vector<std::string> out;
    for (const auto& kv : values_) out.push_back(kv.first);
    return out;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::lookup(const std::string& key, const std::string& fallback) {
    const auto it = values_.find(key);
    const std::string v = it == values_.end() ? fallback : it->second;
    resolved_[key] = v;
    return v;
}

double RunConfig::number(const std::string& key, double fallback) {
    return parse_number(key, lookup(key, format_double(fallback)));
}

double RunConfig::number(const std::string& key) {
    if (!has(key)) throw ConfigError("missing required parameter '" + key + "'");
    return parse_number(key, lookup(key, ""));
}

std::int64_t RunConfig::integer(const std::string& key, std::int64_t fallback) {
    const std::string v = lookup(key, std::to_string(fallback));
    std::int64_t x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError("parameter '" + key + "': '" + v + "' is not an integer");
    return x;
}

std::uint64_t RunConfig::unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const std::string v = lookup(key, std::to_string(fallback));
    std::uint64_t x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError("parameter '" + key + "': '" + v + "' is not a nonnegative integer");
    return x;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) { return lookup(key, fallback); }

std::vector<double> RunConfig::numbers(const std::string& key, const std::vector<double>& fallback) {
    std::string joined;
    for (std::size_t i = 0; i < fallback.size(); ++i) joined += (i ? "," : "") + format_double(fallback[i]);
    const std::string v = lookup(key, joined);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
    if (out.empty()) throw ConfigError("parameter '" + key + "' is empty");
    return out;
}

void RunConfig::check_all_used() const {
    for (const auto& [k, v] : values_)
        if (!resolved_.count(k)) throw ConfigError("unknown parameter '" + k + "'");
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Format format_from(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ConfigError("format must be csv or json, got '" + s + "'");
}

}  // namespace rbmlab::cli
