#include <rbmlab/validation.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace val = rbmlab::validation;

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria: one PASS/FAIL line per criterion"};
    val::Options opt;
    std::vector<int> only;
    std::string report_path;
    app.add_option("--only", only, "criterion ids to run (default: all)");
    app.add_option("--seed", opt.seed, "master seed");
    app.add_option("--threads", opt.threads, "worker threads");
    app.add_option("--report", report_path, "write the JSON report here");
    CLI11_PARSE(app, argc, argv);
    opt.only.insert(only.begin(), only.end());

    bool all = true;
    val::Report report;
    report.seed = opt.seed;
    report.path_scale = opt.path_scale;
    for (const auto& c : val::checks()) {
        if (!opt.only.empty() && !opt.only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        auto r = val::run_check(c.id, opt);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << val::summary_line(r) << "  (" << static_cast<int>(secs + 0.5) << " s)" << std::endl;
        all = all && r.passed;
        report.checks.push_back(std::move(r));
    }
    report.passed = all;
    if (!report_path.empty()) std::ofstream(report_path) << val::to_json(report);
    return all ? 0 : 1;
}
