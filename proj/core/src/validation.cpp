#include "rbmlab/validation.hpp"

#include "rbmlab/analytic.hpp"
#include "rbmlab/estimators.hpp"
#include "rbmlab/extended_real.hpp"
#include "rbmlab/ldp.hpp"
#include "rbmlab/random.hpp"
#include "rbmlab/renewal.hpp"
#include "rbmlab/simulate.hpp"
#include "rbmlab/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rbmlab::validation {

namespace {

class Recorder {
public:
    Recorder(int id, const Options& opt) : id_(id), opt_(opt) {}

    void add(const std::string& name, const std::string& description, double measured, double target,
             double tolerance, Compare compare) {
        Measurement m;
        m.key = "c" + std::to_string(id_) + "." + name;
        m.description = description;
        m.measured = measured;
        m.target = override_or(m.key + ".target", target);
        m.tolerance = override_or(m.key + ".tolerance", tolerance);
        m.compare = compare;
        m.passed = judge(m);
        items_.push_back(std::move(m));
    }

    void flag(const std::string& name, const std::string& description, bool ok) {
        add(name, description, ok ? 1.0 : 0.0, 1.0, 0.0, Compare::abs);
    }

    std::vector<Measurement> take() { return std::move(items_); }

private:
    double override_or(const std::string& key, double v) const {
        const auto it = opt_.overrides.find(key);
        return it == opt_.overrides.end() ? v : it->second;
    }

    static bool judge(const Measurement& m) {
        if (std::isnan(m.measured)) return false;
        switch (m.compare) {
            case Compare::abs: return std::fabs(m.measured - m.target) <= m.tolerance;
            case Compare::rel: return std::fabs(m.measured - m.target) <= m.tolerance * std::fabs(m.target);
            case Compare::upper: return m.measured <= m.target + m.tolerance;
            case Compare::lower: return m.measured >= m.target - m.tolerance;
        }
        return false;
    }

    int id_;
    const Options& opt_;
    std::vector<Measurement> items_;
};

std::size_t paths(const Options& opt, std::size_t n) {
    return std::max<std::size_t>(200, static_cast<std::size_t>(std::llround(static_cast<double>(n) * opt.path_scale)));
}

SimConfig sim(const Options& opt, int id, double r, double T, std::size_t n) {
    SimConfig c;
    c.r = r;
    c.T = T;
    c.n_paths = paths(opt, n);
    c.seed = mix_seed(opt.seed, static_cast<std::uint64_t>(id));
    c.threads = opt.threads;
    return c;
}

// Ai' from the rotated contour integral; shares no code with specfun
double contour_airy_prime(double x) {
    const double c = std::sqrt(3.0) / 2.0;
    boost::math::quadrature::tanh_sinh<double> q(12);
    auto f = [&](double s) {
        return -s * std::exp(-s * s * s / 3.0 - 0.5 * x * s) * std::sin(c * x * s + std::numbers::pi / 3.0);
    };
    return q.integrate(f, 0.0, 12.0) / std::numbers::pi;
}

// integral of the occupation density over [a0, a1] in the variable a = T sin^2(theta)
double occupation_mass(double a0, double a1, double T, double r) {
    const double t0 = std::asin(std::sqrt(std::clamp(a0 / T, 0.0, 1.0)));
    const double t1 = std::asin(std::sqrt(std::clamp(a1 / T, 0.0, 1.0)));
    auto f = [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        const double a = T * s * s;
        if (!(a > 0.0 && a < T)) return 0.0;
        return analytic::occupation_density(a, T, r) * 2.0 * T * s * c;
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, t0, t1, 12, 1e-13);
}

void check_w_dual(Recorder& rec, const Options&) {
    double worst = 0.0;
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double a = analytic::scaling_w(x), b = analytic::scaling_w_dual(x);
        worst = std::max(worst, std::fabs(a - b) / std::fabs(b));
    }
    rec.add("max_rel_gap", "series vs I0 + 1F2 form of W on {0.1,...,20}", worst, 0.0, 1e-10, Compare::abs);
}

void check_occupation_density(Recorder& rec, const Options& opt) {
    const double cases[3][2] = {{1.0, 5.0}, {2.0, 3.0}, {0.5, 8.0}};
    for (const auto& c : cases) {
        std::ostringstream name;
        name << "mass_r" << c[0] << "_T" << c[1];
        rec.add(name.str(), "integral of the density over (0, T)", occupation_mass(0.0, c[1], c[1], c[0]), 1.0, 1e-6,
                Compare::abs);
    }
    const double r = 1.0, T = 5.0;
    const int bins = 50;
    const auto samples = run_ensemble(sim(opt, 2, r, T, 1000000));
    std::vector<double> counts(bins, 0.0);
    for (const auto& s : samples) counts[std::min(bins - 1, static_cast<int>(s.a / T * bins))] += 1.0;
    const double n = static_cast<double>(samples.size());
    double zmax = 0.0, chi2 = 0.0;
    for (int i = 0; i < bins; ++i) {
        const double p = occupation_mass(T * i / bins, T * (i + 1) / bins, T, r);
        const double z = (counts[i] - n * p) / std::sqrt(n * p * (1.0 - p));
        zmax = std::max(zmax, std::fabs(z));
        chi2 += z * z;
    }
    rec.add("histogram_max_abs_z", "largest per-bin |z| of the MC histogram, r=1, T=5", zmax, 4.0, 0.0,
            Compare::upper);
    rec.add("histogram_chi2_per_dof", "chi^2 / (bins - 1) of the MC histogram", chi2 / (bins - 1), 1.5, 0.0,
            Compare::upper);
}

void check_arcsine_limit(Recorder& rec, const Options&) {
    const double r = 1e-3, T = 1.0;
    double worst = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double a = 0.1 + 0.001 * i;
        const double p = analytic::occupation_density(a, T, r), p0 = analytic::occupation_density_free(a, T);
        worst = std::max(worst, std::fabs(p / p0 - 1.0));
    }
    rec.add("max_rel_gap", "density at r=1e-3 vs arcsine law on [0.1, 0.9]", worst, 0.01, 0.0, Compare::upper);
}

void check_occupation_ldp(Recorder& rec, const Options&) {
    for (double r : {0.5, 1.0, 2.0}) {
        std::vector<double> k;
        for (int i = 0; i <= 24000; ++i) k.push_back(-60.0 + 0.005 * i);
        const auto curve = ldp::legendre([r](double x) { return analytic::scgf_a(x, r); }, k);
        double worst = 0.0;
        int used = 0;
        for (std::size_t i = 0; i < curve.phi.size(); ++i) {
            const double a = curve.phi[i];
            if (a < 0.05 || a > 0.95) continue;
            ++used;
            worst = std::max(worst, std::fabs(curve.chi[i] - analytic::chi_a(a, r).value()));
        }
        std::ostringstream tag;
        tag << "_r" << r;
        rec.add("legendre_max_abs_err" + tag.str(), "Legendre of the SCGF vs closed-form rate on [0.05, 0.95]",
                used > 0 ? worst : std::nan(""), 0.0, 1e-8, Compare::abs);
        rec.add("chi_at_0" + tag.str(), "rate at a = 0", analytic::chi_a(0.0, r).value(), r, 0.0, Compare::abs);
        rec.add("chi_at_1" + tag.str(), "rate at a = 1", analytic::chi_a(1.0, r).value(), r, 0.0, Compare::abs);
    }
}

void check_area_moments(Recorder& rec, const Options& opt) {
    for (double rho : {0.1, 1.0, 10.0}) {
        const auto m = renewal::moments_via_renewal(renewal::MomentFunctional::area, 1.0, rho, 4);
        std::ostringstream tag;
        tag << "_rT" << rho;
        rec.add("second_moment" + tag.str(), "renewal inversion vs closed form E[B^2], r=1", m[1],
                analytic::area_second_moment(rho, 1.0), 1e-6, Compare::rel);
        rec.add("fourth_moment" + tag.str(), "renewal inversion vs closed form E[B^4], r=1", m[3],
                analytic::area_fourth_moment(rho, 1.0), 1e-6, Compare::rel);
    }
    rec.add("small_rho_second_moment", "E[B^2] at r=1e-6, T=1 vs T^3/3", analytic::area_second_moment(1.0, 1e-6),
            1.0 / 3.0, 1e-5, Compare::rel);
    double worst = 0.0;
    for (double r : {0.25, 1.0, 4.0}) {
        const double t = analytic::area_crossover_time(r);
        worst = std::max(worst, std::fabs(t - std::sqrt(6.0) / r) / (std::sqrt(6.0) / r));
        // the two asymptotes meet there
        worst = std::max(worst, std::fabs(t * t * t / 3.0 - 2.0 * t / (r * r)) / (2.0 * t / (r * r)));
    }
    rec.add("crossover_residual", "asymptote intersection vs sqrt(6)/r (relative)", worst, 0.0, 1e-12, Compare::abs);

    const auto samples = run_ensemble(sim(opt, 5, 1.0, 5.0, 100000));
    const auto ms = estimate_moments(samples, Functional::area);
    rec.add("mc_variance", "MC variance of B_T at r=1, T=5 (tolerance 3 standard errors)", ms.variance,
            analytic::area_second_moment(5.0, 1.0), 3.0 * ms.std_error_variance, Compare::abs);
}

void check_clt(Recorder& rec, const Options& opt) {
    const double T = 200.0;
    const auto samples = run_ensemble(sim(opt, 6, 1.0, T, 100000));
    std::vector<double> z = extract(samples, Functional::area);
    for (double& x : z) x /= std::sqrt(T);
    const auto m = estimate_moments(z);
    rec.add("variance", "sample variance of B_T / sqrt(T), r=1, T=200", m.variance, analytic::clt_variance(1.0),
            0.05, Compare::rel);
    rec.add("abs_skewness", "|skewness| of B_T / sqrt(T)", std::fabs(m.skewness), 0.05, 0.0, Compare::upper);
    rec.add("abs_excess_kurtosis", "|excess kurtosis| of B_T / sqrt(T)", std::fabs(m.excess_kurtosis), 0.1, 0.0,
            Compare::upper);
}

void check_absarea(Recorder& rec, const Options& opt) {
    const double r = 1.0, T = 10.0;
    const auto samples = run_ensemble(sim(opt, 7, r, T, 100000));
    const auto m = estimate_moments(samples, Functional::absarea);
    rec.add("mc_mean", "MC mean of C_T at r=1, T=10 vs T^{3/2} f1 (3 standard errors)", m.mean,
            analytic::absarea_mean(T, r), 3.0 * m.std_error_mean, Compare::abs);
    rec.add("mc_variance", "MC variance of C_T vs T^3 f2 (3 standard errors)", m.variance,
            analytic::absarea_variance(T, r), 3.0 * m.std_error_variance, Compare::abs);
    rec.add("f1_small_rho", "f1(1e-12) vs 4/(3 sqrt(2 pi))", analytic::absarea_f1(1e-12),
            4.0 / (3.0 * std::sqrt(2.0 * std::numbers::pi)), 1e-6, Compare::abs);
    const double big = 1e4;
    rec.add("mean_rate_large_rT", "T^{1/2} f1(rT) at rT=1e4, r=1 vs 1/sqrt(2r)", std::sqrt(big) * analytic::absarea_f1(big),
            1.0 / std::sqrt(2.0), 0.01, Compare::rel);
}

void check_absarea_scgf(Recorder& rec, const Options&) {
    const auto g = renewal::free_gf_absarea();
    double worst = 0.0;
    for (double r : {0.5, 1.0})
        for (double k : {-0.1, -1.0, -10.0}) {
            const double lam = ldp::scgf_c(k, r);
            worst = std::max(worst, std::fabs(r * g.eval(k, lam + r) - 1.0));
        }
    rec.add("max_root_residual", "|r G0(k, lambda + r) - 1| over k in {-0.1,-1,-10}, r in {0.5,1}", worst, 0.0, 1e-10,
            Compare::abs);
    rec.add("lambda_near_zero", "|lambda(-1e-8)| at r=1", std::fabs(ldp::scgf_c(-1e-8, 1.0)), 1e-4, 0.0,
            Compare::upper);
    const double z0 = specfun::airy_prime_first_zero();
    double gap = 0.0;
    for (double k : {-1.0, -10.0, -100.0}) {
        const double power = std::cbrt(0.5) * std::cbrt(k * k) * z0;
        gap = std::max(gap, std::fabs(ldp::scgf_c(k, 1e-4) / power - 1.0));
    }
    rec.add("small_r_power_law", "max |lambda / ((1/2)^{1/3} (-k)^{2/3} z0) - 1| at r=1e-4", gap, 0.01, 0.0,
            Compare::upper);
}

void check_free_absarea(Recorder& rec, const Options&) {
    double lo = -1.2, hi = -0.9;
    const double flo = contour_airy_prime(lo);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((contour_airy_prime(mid) < 0.0) == (flo < 0.0)) lo = mid;
        else hi = mid;
    }
    const double oracle = 0.5 * (lo + hi);
    rec.add("airy_prime_zero_vs_oracle", "first zero of Ai' vs contour-quadrature bisection",
            specfun::airy_prime_first_zero(), oracle, 1e-8, Compare::abs);
    rec.add("airy_prime_zero_value", "first zero of Ai' vs -1.0187929716", specfun::airy_prime_first_zero(),
            -1.0187929716, 1e-8, Compare::abs);

    const auto curve = ldp::legendre(analytic::scgf_c_free, ldp::absarea_k_grid(0.0, 2000));
    double worst = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < curve.phi.size(); ++i) {
        const double c = curve.phi[i];
        if (c < 0.2 || c > 5.0) continue;
        ++used;
        worst = std::max(worst, std::fabs(curve.chi[i] - analytic::chi_c_free(c)));
    }
    rec.add("legendre_max_abs_err", "Legendre of the reset-free power law vs closed form on [0.2, 5]",
            used > 0 ? worst : std::nan(""), 0.0, 1e-6, Compare::abs);
}

void check_variational(Recorder& rec, const Options& opt) {
    std::vector<double> err;
    for (int n : {16, 32, 64}) {
        const auto res = ldp::variational_rate(ldp::occupation_problem(1.0, 0.8, n));
        err.push_back(std::fabs(res.chi.value() - 0.2));
        rec.add("occupation_phi08_n" + std::to_string(n), "variational rate, occupation, r=1, phi=0.8",
                res.chi.value(), 0.2, 0.1, Compare::rel);
    }
    rec.flag("occupation_refinement_monotone", "error to 0.2 non-increasing over 16, 32, 64 nodes",
             err[1] <= err[0] + 1e-12 && err[2] <= err[1] + 1e-12);
    rec.add("occupation_at_mean", "variational rate at phi = 1/2, r=1",
            ldp::variational_rate(ldp::occupation_problem(1.0, 0.5)).chi.value(), 1e-3, 0.0, Compare::upper);

    const double r = 1.0;
    const auto rep = ldp::m_tau_empirical(Functional::absarea, 1.0, {0.0}, paths(opt, 100000),
                                          mix_seed(opt.seed, 10), opt.threads);
    const double cstar = analytic::absarea_mean_rate(r);
    for (double f : {1.25, 1.5, 2.0}) {
        std::vector<double> chi;
        for (int n : {16, 32, 64})
            chi.push_back(ldp::variational_rate(ldp::absarea_problem(r, f * cstar, rep.cgf, n)).chi.value());
        std::ostringstream tag;
        tag << "_" << f << "cstar";
        rec.add("absarea_flat" + tag.str(), "absolute-area variational rate at 64 nodes (bound 0.05 r)", chi[2],
                0.05 * r, 0.0, Compare::upper);
        rec.flag("absarea_refinement" + tag.str(), "non-increasing over 16, 32, 64 nodes",
                 chi[1] <= chi[0] && chi[2] <= chi[1]);
    }

    const double u = rep.cgf(0.0).dm;
    const double k2 = ldp::k1_second_derivative(rep.cgf.scaled(1.5), u, 0.02, {-20.0, 20.0});
    const auto q64 = ldp::quadratic_coefficient(r, 1.5, k2, 64);
    const auto q32 = ldp::quadratic_coefficient(r, 1.5, k2, 32);
    rec.add("quadratic_positive", "quadratic coefficient C_r > 0 at (r, alpha) = (1, 3/2)", q64.value,
            std::numeric_limits<double>::min(), 0.0, Compare::lower);
    rec.add("quadratic_below_bound", "C_r <= 1/(2 Gamma(5/2)^2)", q64.value, 1.0 / (2.0 * std::pow(std::tgamma(2.5), 2)),
            0.0, Compare::upper);
    rec.add("quadratic_refinement", "|C_64 - C_32| / C_64", std::fabs(q64.value - q32.value) / q64.value, 0.0, 1e-6,
            Compare::abs);
}

void check_stationary(Recorder& rec, const Options& opt) {
    const auto samples = run_ensemble(sim(opt, 11, 1.0, 10.0, 100000));
    const auto x = extract(samples, Functional::endpoint);
    rec.add("ks_distance", "KS distance of endpoints (r=1, T=10) to the stationary law",
            ks_distance(x, [](double v) { return analytic::stationary_cdf(v, 1.0); }), 0.01, 0.0, Compare::upper);
}

void check_reproducibility(Recorder& rec, const Options& opt) {
    Options sub = opt;
    sub.path_scale = opt.path_scale * 0.05;
    sub.only.clear();
    for (int id = 1; id <= 11; ++id) sub.only.insert(id);
    sub.threads = 1;
    const std::string a = to_json(run_suite(sub));
    const std::string b = to_json(run_suite(sub));
    sub.threads = std::max(3u, opt.threads);
    const std::string c = to_json(run_suite(sub));
    rec.flag("same_threads", "two runs with one thread are byte-identical", a == b);
    rec.flag("across_threads", "one thread vs several threads byte-identical", a == c);
}

using CheckFn = void (*)(Recorder&, const Options&);

struct Entry {
    CheckInfo info;
    CheckFn fn;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {{1, "dual-form scaling function W", false}, check_w_dual},
        {{2, "occupation density: normalization and MC histogram", true}, check_occupation_density},
        {{3, "arcsine limit of the occupation density", false}, check_arcsine_limit},
        {{4, "occupation LDP by Legendre transform", false}, check_occupation_ldp},
        {{5, "area moments", true}, check_area_moments},
        {{6, "central limit theorem for the area", true}, check_clt},
        {{7, "absolute-area moments", true}, check_absarea},
        {{8, "absolute-area SCGF", false}, check_absarea_scgf},
        {{9, "reset-free absolute-area rate function", false}, check_free_absarea},
        {{10, "variational formula, flatness and quadratic coefficient", true}, check_variational},
        {{11, "stationary density of the endpoint", true}, check_stationary},
        {{12, "reproducibility of the validation report", true}, check_reproducibility},
    };
    return r;
}

const char* compare_name(Compare c) {
    switch (c) {
        case Compare::abs: return "abs";
        case Compare::rel: return "rel";
        case Compare::upper: return "upper";
        case Compare::lower: return "lower";
    }
    return "?";
}

nlohmann::ordered_json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

}  // namespace

const std::vector<CheckInfo>& checks() {
    static const std::vector<CheckInfo> v = [] {
        std::vector<CheckInfo> out;
        for (const auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return v;
}

CheckReport run_check(int id, const Options& options) {
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [id](const Entry& e) { return e.info.id == id; });
    if (it == reg.end()) throw std::invalid_argument("validation: unknown check " + std::to_string(id));
    CheckReport out;
    out.id = id;
    out.title = it->info.title;
    Recorder rec(id, options);
    try {
        it->fn(rec, options);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.items = rec.take();
    out.passed = out.error.empty() && !out.items.empty() &&
                 std::all_of(out.items.begin(), out.items.end(), [](const Measurement& m) { return m.passed; });
    return out;
}

Report run_suite(const Options& options) {
    for (int id : options.only)
        if (id < 1 || id > static_cast<int>(registry().size()))
            throw std::invalid_argument("validation: unknown check " + std::to_string(id));
    Report rep;
    rep.seed = options.seed;
    rep.path_scale = options.path_scale;
    rep.passed = true;
    for (const auto& e : registry()) {
        if (!options.only.empty() && !options.only.count(e.info.id)) continue;
        rep.checks.push_back(run_check(e.info.id, options));
        rep.passed = rep.passed && rep.checks.back().passed;
    }
    return rep;
}

std::string to_json(const Report& report) {
    nlohmann::ordered_json j;
    j["seed"] = report.seed;
    j["path_scale"] = report.path_scale;
    j["passed"] = report.passed;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["title"] = c.title;
        jc["passed"] = c.passed;
        if (!c.error.empty()) jc["error"] = c.error;
        jc["measurements"] = nlohmann::ordered_json::array();
        for (const auto& m : c.items) {
            nlohmann::ordered_json jm;
            jm["key"] = m.key;
            jm["description"] = m.description;
            jm["measured"] = number(m.measured);
            jm["target"] = number(m.target);
            jm["tolerance"] = number(m.tolerance);
            jm["compare"] = compare_name(m.compare);
            jm["passed"] = m.passed;
            jc["measurements"].push_back(std::move(jm));
        }
        j["checks"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

std::string summary_line(const CheckReport& check) {
    std::ostringstream os;
    os << (check.passed ? "PASS" : "FAIL") << "  [" << check.id << "] " << check.title;
    if (!check.error.empty()) os << "  error: " << check.error;
    for (const auto& m : check.items)
        if (!m.passed)
            os << "\n        " << m.key << ": measured " << format_double(m.measured) << ", target "
               << format_double(m.target) << " (" << compare_name(m.compare) << ", tol "
               << format_double(m.tolerance) << ")";
    return os.str();
}

}  // namespace rbmlab::validation
