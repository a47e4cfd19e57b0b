#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace rbmlab::validation {

// How a measurement is judged against its target.
enum class Compare {
    abs,    // |measured - target| <= tolerance
    rel,    // |measured - target| <= tolerance |target|
    upper,  // measured <= target + tolerance
    lower,  // measured >= target - tolerance
};

struct Measurement {
    std::string key;  // "c<id>.<name>", addressable by overrides
    std::string description;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    Compare compare = Compare::abs;
    bool passed = false;
};

struct CheckInfo {
    int id;
    std::string title;
    bool monte_carlo;
};

struct CheckReport {
    int id = 0;
    std::string title;
    std::vector<Measurement> items;
    bool passed = false;
    std::string error;  // set when the check threw
};

struct Options {
    std::uint64_t seed = 20240611;
    unsigned threads = 1;  // never changes results
    double path_scale = 1.0;
    std::set<int> only;
    // "<key>.target" or "<key>.tolerance" -> value
    std::map<std::string, double> overrides;
};

struct Report {
    std::uint64_t seed = 0;
    double path_scale = 1.0;
    std::vector<CheckReport> checks;
    bool passed = false;
};

const std::vector<CheckInfo>& checks();
CheckReport run_check(int id, const Options& options);
Report run_suite(const Options& options);

// Deterministic JSON: the thread count is not part of the report.
std::string to_json(const Report& report);
std::string summary_line(const CheckReport& check);

}  // namespace rbmlab::validation
