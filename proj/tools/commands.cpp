#include "commands.hpp"

#include "table.hpp"

#include <rbmlab/analytic.hpp>
#include <rbmlab/estimators.hpp>
#include <rbmlab/extended_real.hpp>
#include <rbmlab/ldp.hpp>
#include <rbmlab/renewal.hpp>
#include <rbmlab/simulate.hpp>
#include <rbmlab/validation.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>

namespace rbmlab::cli {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

Header header_for(const std::string& command, RunConfig& cfg, const Common& common) {
    cfg.check_all_used();
    Header h;
    h.command = command;
    h.config = cfg.resolved();
    h.config.erase("threads");
    h.config["format"] = to_string(common.format);
    return h;
}

SimConfig sim_config(RunConfig& cfg, const std::string& paths_key, std::size_t default_paths) {
    SimConfig c;
    c.r = cfg.number("r", 1.0);
    c.T = cfg.number("T", 1.0);
    c.dt = cfg.number("dt", 0.0);
    c.n_paths = cfg.unsigned_integer(paths_key, default_paths);
    c.seed = cfg.unsigned_integer("seed", 1);
    c.threads = static_cast<unsigned>(cfg.unsigned_integer("threads", 1));
    require(c.dt >= 0.0, "parameter 'dt' must be nonnegative");
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

std::string summary_json(const Header& h, std::span<const FunctionalSample> samples) {
    nlohmann::ordered_json j;
    j["command"] = h.command;
    j["config"] = h.config;
    auto& s = j["summary"];
    for (auto f : {Functional::occupation, Functional::area, Functional::absarea, Functional::endpoint}) {
        try {
            const auto m = estimate_moments(samples, f);
            s[name_of(f)] = {{"n", m.n},
                             {"mean", m.mean},
                             {"variance", m.variance},
                             {"skewness", m.skewness},
                             {"excess_kurtosis", m.excess_kurtosis},
                             {"std_error_mean", m.std_error_mean},
                             {"std_error_variance", m.std_error_variance}};
        } catch (const std::exception& e) {
            s[name_of(f)] = {{"n", samples.size()}, {"undefined", e.what()}};
        }
    }
    return j.dump(2) + "\n";
}

std::string default_summary_path(const std::string& out) {
    if (out.empty() || out == "-") return "";
    return out + ".summary.json";
}

}  // namespace

int cmd_simulate(RunConfig& cfg, const Common& common) {
    const SimConfig sc = sim_config(cfg, "n", 1000);
    const std::string summary_path = cfg.text("summary", default_summary_path(common.out));
    const Header h = header_for("simulate", cfg, common);
    const auto samples = run_ensemble(sc);

    Table t;
    t.columns = {"path_id", "a", "b", "c", "x_end", "n_resets"};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        t.add_row({static_cast<double>(i), s.a, s.b, s.c, s.x_end, static_cast<double>(s.n_resets)});
    }
    for (auto f : {Functional::occupation, Functional::area, Functional::absarea, Functional::endpoint}) {
        try {
            const auto m = estimate_moments(samples, f);
            t.notes[std::string(name_of(f)) + ".mean"] = format_double(m.mean);
            t.notes[std::string(name_of(f)) + ".variance"] = format_double(m.variance);
        } catch (const std::exception&) {
        }
    }
    emit(common.out, common.format, h, t);
    if (!summary_path.empty()) emit_text(summary_path, summary_json(h, samples));
    return 0;
}

int cmd_density(RunConfig& cfg, const Common& common) {
    const std::string functional = cfg.text("functional", "occupation");
    require(functional == "occupation", "density: only functional=occupation has a closed-form density");
    const double r = cfg.number("r", 1.0);
    const double T = cfg.number("T", 1.0);
    const auto points = cfg.integer("points", 101);
    const auto mc_paths = cfg.unsigned_integer("mc_paths", 0);
    require(r >= 0.0 && std::isfinite(r), "parameter 'r' must be a finite nonnegative number");
    require(T > 0.0 && std::isfinite(T), "parameter 'T' must be positive");
    require(points >= 2 && points <= 1000000, "parameter 'points' must be in [2, 1e6]");
    SimConfig sc;
    if (mc_paths > 0) {
        sc = sim_config(cfg, "mc_paths", 0);
    }
    const Header h = header_for("density", cfg, common);

    std::vector<double> a(static_cast<std::size_t>(points));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = T * static_cast<double>(i + 1) / static_cast<double>(points + 1);

    Table t;
    t.columns = {"a", "density", "arcsine"};
    std::vector<double> mc;
    if (mc_paths > 0) {
        t.columns.push_back("mc_density");
        std::vector<double> edges = {0.0};
        for (std::size_t i = 0; i + 1 < a.size(); ++i) edges.push_back(0.5 * (a[i] + a[i + 1]));
        edges.push_back(T);
        std::vector<double> counts(a.size(), 0.0);
        const auto samples = run_ensemble(sc);
        for (const auto& s : samples) {
            const auto it = std::upper_bound(edges.begin(), edges.end(), s.a);
            const std::size_t bin = std::min<std::size_t>(a.size() - 1, it == edges.begin() ? 0 : (it - edges.begin()) - 1);
            counts[bin] += 1.0;
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            mc.push_back(counts[i] / (static_cast<double>(samples.size()) * (edges[i + 1] - edges[i])));
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double p0 = analytic::occupation_density_free(a[i], T);
        const double p = r > 0.0 ? analytic::occupation_density(a[i], T, r) : p0;
        std::vector<double> row = {a[i], p, p0};
        if (!mc.empty()) row.push_back(mc[i]);
        t.add_row(std::move(row));
    }
    emit(common.out, common.format, h, t);
    return 0;
}

int cmd_moments(RunConfig& cfg, const Common& common) {
    const std::string name = cfg.text("functional", "area");
    const double r = cfg.number("r", 1.0);
    const double T = cfg.number("T", 1.0);
    const auto order = cfg.integer("order", 2);
    const auto mc_paths = cfg.unsigned_integer("mc_paths", 0);
    renewal::MomentFunctional mf;
    Functional f;
    int cap;
    if (name == "occupation") mf = renewal::MomentFunctional::occupation, f = Functional::occupation, cap = 4;
    else if (name == "area") mf = renewal::MomentFunctional::area, f = Functional::area, cap = 4;
    else if (name == "absarea") mf = renewal::MomentFunctional::absarea, f = Functional::absarea, cap = 2;
    else throw ConfigError("moments: functional must be occupation, area or absarea");
    require(r > 0.0 && std::isfinite(r), "parameter 'r' must be positive");
    require(T > 0.0 && std::isfinite(T), "parameter 'T' must be positive");
    require(order >= 1 && order <= cap, "parameter 'order' must be in [1, " + std::to_string(cap) + "] for " + name);
    SimConfig sc;
    if (mc_paths > 0) {
        sc = sim_config(cfg, "mc_paths", 0);
        require(sc.r == r && sc.T == T, "internal: simulation parameters disagree");
    }
    const Header h = header_for("moments", cfg, common);

    const auto m = renewal::moments_via_renewal(mf, r, T, static_cast<int>(order));
    std::vector<double> values;
    if (mc_paths > 0) values = extract(run_ensemble(sc), f);

    Table t;
    t.columns = {"order", "renewal", "closed_form"};
    if (!values.empty()) {
        t.columns.push_back("mc");
        t.columns.push_back("mc_std_error");
    }
    for (int n = 1; n <= order; ++n) {
        double closed = nan_value;
        if (f == Functional::occupation && n == 1) closed = 0.5 * T;
        if (f == Functional::area) {
            if (n % 2 == 1) closed = 0.0;
            else if (n == 2) closed = analytic::area_second_moment(T, r);
            else closed = analytic::area_fourth_moment(T, r);
        }
        if (f == Functional::absarea) closed = n == 1 ? analytic::absarea_mean(T, r) : analytic::absarea_second_moment(T, r);
        std::vector<double> row = {static_cast<double>(n), m[static_cast<std::size_t>(n - 1)], closed};
        if (!values.empty()) {
            double s = 0.0, s2 = 0.0;
            for (double x : values) {
                const double p = std::pow(x, n);
                s += p;
                s2 += p * p;
            }
            const double k = static_cast<double>(values.size());
            const double mean = s / k;
            row.push_back(mean);
            row.push_back(std::sqrt(std::max(0.0, s2 / k - mean * mean) / (k - 1.0)));
        }
        t.add_row(std::move(row));
    }
    emit(common.out, common.format, h, t);
    return 0;
}

int cmd_scgf(RunConfig& cfg, const Common& common) {
    const std::string name = cfg.text("functional", "occupation");
    require(name == "occupation" || name == "absarea", "scgf: functional must be occupation or absarea");
    const bool occ = name == "occupation";
    const double r = cfg.number("r", 1.0);
    const double k_min = cfg.number("k_min", occ ? -5.0 : -10.0);
    const double k_max = cfg.number("k_max", occ ? 5.0 : -0.01);
    const auto points = cfg.integer("points", 101);
    const auto threads = cfg.unsigned_integer("threads", 1);
    (void)threads;
    require(std::isfinite(r) && (occ ? r > 0.0 : r >= 0.0), "parameter 'r' out of range");
    require(k_min < k_max, "parameter 'k_min' must be below 'k_max'");
    require(occ || k_max < 0.0, "scgf: the absolute-area SCGF is defined for k < 0 only");
    require(points >= 2 && points <= 1000000, "parameter 'points' must be in [2, 1e6]");
    const Header h = header_for("scgf", cfg, common);

    Table t;
    t.columns = {"k", "lambda"};
    for (std::int64_t i = 0; i < points; ++i) {
        const double k = k_min + (k_max - k_min) * static_cast<double>(i) / static_cast<double>(points - 1);
        double lam;
        if (occ) lam = analytic::scgf_a(k, r);
        else lam = r == 0.0 ? analytic::scgf_c_free(k) : ldp::scgf_c(k, r);
        t.add_row({k, lam});
    }
    emit(common.out, common.format, h, t);
    return 0;
}

int cmd_rate(RunConfig& cfg, const Common& common) {
    const std::string name = cfg.text("functional", "occupation");
    require(name == "occupation" || name == "absarea", "rate: functional must be occupation or absarea");
    const double r = cfg.number("r", 1.0);
    require(std::isfinite(r) && r >= 0.0, "parameter 'r' must be a finite nonnegative number");
    Table t;
    if (name == "occupation") {
        require(r > 0.0, "rate: the occupation rate function needs r > 0");
        const auto points = cfg.integer("points", 101);
        require(points >= 2 && points <= 1000000, "parameter 'points' must be in [2, 1e6]");
        const Header h = header_for("rate", cfg, common);
        t.columns = {"phi", "chi", "flat"};
        for (std::int64_t i = 0; i < points; ++i) {
            const double a = static_cast<double>(i) / static_cast<double>(points - 1);
            t.add_row({a, analytic::chi_a(a, r).value(), 0.0});
        }
        emit(common.out, common.format, h, t);
        return 0;
    }
    const auto threads = static_cast<unsigned>(cfg.unsigned_integer("threads", 1));
    const Header h = header_for("rate", cfg, common);
    const auto curve = ldp::chi_c_curve(r, threads);
    t.columns = {"phi", "chi", "flat"};
    if (r == 0.0) t.columns.push_back("closed_form");
    for (std::size_t i = 0; i < curve.phi.size(); ++i) {
        std::vector<double> row = {curve.phi[i], curve.chi[i], curve.is_flat(i) ? 1.0 : 0.0};
        if (r == 0.0) row.push_back(analytic::chi_c_free(curve.phi[i]));
        t.add_row(std::move(row));
    }
    if (curve.flat_from) {
        const double c = *curve.flat_from;
        for (int i = 1; i <= 20; ++i) t.add_row({c * (1.0 + 0.05 * i), 0.0, 1.0});
        t.notes["flat_from"] = format_double(c);
    }
    emit(common.out, common.format, h, t);
    return 0;
}

int cmd_variational(RunConfig& cfg, const Common& common) {
    const std::string name = cfg.text("functional", "occupation");
    require(name == "occupation" || name == "absarea", "variational: functional must be occupation or absarea");
    const double r = cfg.number("r", 1.0);
    const double phi = cfg.number("phi", name == "occupation" ? 0.5 : 1.0);
    const auto nodes = cfg.integer("nodes", 64);
    require(r > 0.0 && std::isfinite(r), "parameter 'r' must be positive");
    require(std::isfinite(phi), "parameter 'phi' must be finite");
    require(nodes >= 2 && nodes <= 150, "parameter 'nodes' must be in [2, 150]");
    std::optional<ldp::EmpiricalCgf> cgf;
    std::size_t cgf_paths = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    if (name == "absarea") {
        cgf_paths = cfg.unsigned_integer("cgf_paths", 100000);
        seed = cfg.unsigned_integer("seed", 1);
        threads = static_cast<unsigned>(cfg.unsigned_integer("threads", 1));
        require(cgf_paths >= 100, "parameter 'cgf_paths' must be at least 100");
    }
    const Header h = header_for("variational", cfg, common);
    if (name == "absarea") cgf = ldp::m_tau_empirical(Functional::absarea, 1.0, {0.0}, cgf_paths, seed, threads).cgf;

    const auto problem = name == "occupation" ? ldp::occupation_problem(r, phi, static_cast<int>(nodes))
                                              : ldp::absarea_problem(r, phi, *cgf, static_cast<int>(nodes));
    const auto res = ldp::variational_rate(problem);
    Table t;
    t.columns = {"t", "mu", "w"};
    if (res.chi.is_finite())
        for (std::size_t i = 0; i < res.mu.size(); ++i) t.add_row({res.mu.nodes[i], res.mu.weights[i], res.w[i]});
    t.notes["chi"] = res.chi.to_string();
    t.notes["converged"] = res.converged ? "true" : "false";
    if (!res.diagnostic.empty()) t.notes["diagnostic"] = res.diagnostic;
    if (res.chi.is_finite()) {
        t.notes["n"] = format_double(res.n);
        t.notes["k"] = format_double(res.k);
        t.notes["lambda"] = format_double(res.lambda);
        t.notes["dual_value"] = format_double(res.dual_value);
        t.notes["phi_residual"] = format_double(res.phi_residual);
        t.notes["time_residual"] = format_double(res.time_residual);
    }
    emit(common.out, common.format, h, t);
    return 0;
}

int cmd_validate(RunConfig& cfg, const Common& common, bool list_only) {
    namespace val = rbmlab::validation;
    if (list_only) {
        std::ostringstream os;
        for (const auto& c : val::checks())
            os << c.id << "\t" << c.title << (c.monte_carlo ? "\t(monte carlo)" : "") << "\n";
        emit_text(common.out, os.str());
        return 0;
    }
    val::Options opt;
    opt.seed = cfg.unsigned_integer("seed", opt.seed);
    opt.threads = static_cast<unsigned>(cfg.unsigned_integer("threads", 1));
    opt.path_scale = cfg.number("path_scale", 1.0);
    require(opt.path_scale > 0.0 && std::isfinite(opt.path_scale), "parameter 'path_scale' must be positive");
    for (double id : cfg.numbers("only", {})) {
        require(id == std::floor(id) && id >= 1 && id <= static_cast<double>(val::checks().size()),
                "parameter 'only': unknown check id " + format_double(id));
        opt.only.insert(static_cast<int>(id));
    }
    for (const auto& key : cfg.keys()) {
        const bool target = key.ends_with(".target"), tolerance = key.ends_with(".tolerance");
        if (key.starts_with("c") && (target || tolerance)) opt.overrides[key] = cfg.number(key);
    }
    cfg.check_all_used();

    // Override keys must name a measurement of a selected check.
    val::Report report;
    report.seed = opt.seed;
    report.path_scale = opt.path_scale;
    report.passed = true;
    std::set<std::string> seen;
    for (const auto& info : val::checks()) {
        if (!opt.only.empty() && !opt.only.contains(info.id)) continue;
        auto check = val::run_check(info.id, opt);
        for (const auto& m : check.items) seen.insert(m.key);
        std::cerr << val::summary_line(check) << std::endl;
        report.passed = report.passed && check.passed;
        report.checks.push_back(std::move(check));
    }
    for (const auto& [key, value] : opt.overrides) {
        const std::string base = key.substr(0, key.rfind('.'));
        if (!seen.contains(base)) throw ConfigError("override '" + key + "' names no measurement of the selected checks");
    }

    if (common.format == Format::json) {
        emit_text(common.out, val::to_json(report));
    } else {
        Header h;
        h.command = "validate";
        h.config = cfg.resolved();
        h.config.erase("threads");
        h.config["format"] = to_string(common.format);
        std::ostringstream os;
        os << "# command=validate\n";
        for (const auto& [k, v] : h.config) os << "# " << k << "=" << v << "\n";
        os << "check,key,measured,target,tolerance,compare,passed\n";
        const char* names[] = {"abs", "rel", "upper", "lower"};
        for (const auto& c : report.checks) {
            if (!c.error.empty()) os << c.id << ",error,nan,nan,nan,abs,0\n";
            for (const auto& m : c.items)
                os << c.id << "," << m.key << "," << format_double(m.measured) << "," << format_double(m.target)
                   << "," << format_double(m.tolerance) << "," << names[static_cast<int>(m.compare)] << ","
                   << (m.passed ? 1 : 0) << "\n";
        }
        emit_text(common.out, os.str());
    }
    return report.passed ? 0 : 1;
}

}  // namespace rbmlab::cli
