#include "commands.hpp"

#include <rbmlab/errors.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>

namespace {

enum Exit { ok = 0, failure = 1, bad_config = 2, io = 3 };

struct Invocation {
    std::string config_file;
    std::string out;
    std::string format = "csv";
    std::string seed;
    std::string threads;
    std::vector<std::string> overrides;
    bool list = false;
};

void add_common(CLI::App* sub, Invocation& inv) {
    sub->add_option("--config", inv.config_file, "key=value parameter file");
    sub->add_option("--out", inv.out, "output path (stdout when omitted or '-')");
    sub->add_option("--format", inv.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", inv.seed, "master seed");
    sub->add_option("--threads", inv.threads, "worker threads (results do not depend on it)");
    sub->add_option("overrides", inv.overrides, "key=value parameter overrides");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace rbmlab::cli;

    CLI::App app{"Brownian motion with stochastic resetting: simulation, exact results and large deviations"};
    app.require_subcommand(1);
    Invocation inv;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"simulate", "simulate reset paths and record their functionals"},
        {"density", "occupation-time density against the arcsine law"},
        {"moments", "renewal moments against closed forms"},
        {"scgf", "scaled cumulant generating function on a k grid"},
        {"rate", "rate function of the occupation fraction or absolute area"},
        {"variational", "discretized variational rate function"},
        {"validate", "run the validation checks"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, inv);
        subs[name] = sub;
    }
    subs["validate"]->add_flag("--list", inv.list, "print the check inventory and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_config;
    }

    try {
        RunConfig cfg;
        if (!inv.config_file.empty()) cfg.load_file(inv.config_file);
        for (const auto& o : inv.overrides) cfg.apply(o);
        if (!inv.seed.empty()) cfg.set("seed", inv.seed);
        if (!inv.threads.empty()) cfg.set("threads", inv.threads);
        Common common;
        common.out = inv.out;
        common.format = format_from(inv.format);

        if (subs["simulate"]->parsed()) return cmd_simulate(cfg, common);
        if (subs["density"]->parsed()) return cmd_density(cfg, common);
        if (subs["moments"]->parsed()) return cmd_moments(cfg, common);
        if (subs["scgf"]->parsed()) return cmd_scgf(cfg, common);
        if (subs["rate"]->parsed()) return cmd_rate(cfg, common);
        if (subs["variational"]->parsed()) return cmd_variational(cfg, common);
        return cmd_validate(cfg, common, inv.list);
    } catch (const ConfigError& e) {
        std::cerr << "rbmlab: " << e.what() << "\n";
        return bad_config;
    } catch (const IoError& e) {
        std::cerr << "rbmlab: " << e.what() << "\n";
        return io;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rbmlab: " << e.what() << "\n";
        return bad_config;
    } catch (const rbmlab::resource_error& e) {
        std::cerr << "rbmlab: " << e.what() << "\n";
        return bad_config;
    } catch (const std::domain_error& e) {
        std::cerr << "rbmlab: " << e.what() << "\n";
        return bad_config;
    } catch (const std::exception& e) {
        std::cerr << "rbmlab: " << e.what() << "\n";
        return failure;
    }
}
