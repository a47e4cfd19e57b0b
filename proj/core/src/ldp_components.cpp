#include "rbmlab/ldp.hpp"

#include "rbmlab/errors.hpp"
#include "rbmlab/estimators.hpp"
#include "rbmlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace rbmlab::ldp {

double i_rate(double n, double r) {
    if (!(r > 0.0)) throw std::domain_error("i_rate: r must be positive");
    if (!(n >= 0.0)) throw std::domain_error("i_rate: n must be nonnegative");
    if (n == 0.0) return r;
    return n * std::log(n / r) - n + r;
}

double DiscreteMeasure::reference_log_density(double t, double rate) {
    return std::log(rate) - rate * t;
}

void DiscreteMeasure::check() const {
    if (nodes.size() != weights.size() || nodes.size() != cell_widths.size())
        throw std::invalid_argument("DiscreteMeasure: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) throw std::invalid_argument("DiscreteMeasure: negative weight");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("DiscreteMeasure: nodes must be strictly increasing");
        s += weights[i];
    }
    if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument("DiscreteMeasure: weights not normalized");
}

DiscreteMeasure exponential_grid(int n_nodes, double rate) {
    if (!(rate > 0.0)) throw std::domain_error("exponential_grid: rate must be positive");
    if (n_nodes < 1 || n_nodes > 150) throw std::domain_error("exponential_grid: node count must be in [1, 150]");
    const QuadratureRule rule = gauss_laguerre(n_nodes);
    DiscreteMeasure mu;
    double total = 0.0;
    for (double w : rule.weights) total += w;
    for (int i = 0; i < n_nodes; ++i) {
        mu.nodes.push_back(rule.nodes[i] / rate);
        mu.weights.push_back(rule.weights[i] / total);
        mu.cell_widths.push_back(rule.weights[i] / total * std::exp(rule.nodes[i]) / rate);
    }
    return mu;
}

DiscreteMeasure project_density(const DiscreteMeasure& grid, const std::function<double(double)>& density) {
    DiscreteMeasure mu = grid;
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        mu.weights[i] = mu.cell_widths[i] * density(mu.nodes[i]);
        s += mu.weights[i];
    }
    if (!(s > 0.0)) throw std::invalid_argument("project_density: density has no mass on the grid");
    for (double& w : mu.weights) w /= s;
    return mu;
}

DiscreteMeasure point_mass(double t) {
    DiscreteMeasure mu;
    mu.nodes = {t};
    mu.weights = {1.0};
    mu.cell_widths = {0.0};
    return mu;
}

ExtendedReal j_rate(const DiscreteMeasure& mu, double rate) {
    if (!(rate > 0.0)) throw std::domain_error("j_rate: rate must be positive");
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double w = mu.weights[i];
        if (w <= 0.0) continue;
        if (!(mu.cell_widths[i] > 0.0) || mu.nodes[i] < 0.0) return ExtendedReal::infinity();
        s += w * (std::log(w) - std::log(mu.cell_widths[i]) -
                  DiscreteMeasure::reference_log_density(mu.nodes[i], rate));
    }
    return std::max(0.0, s);
}

KRateResult k_rate(double u, double tau, const Cgf& cgf, Interval window) {
    if (!(window.hi > window.lo)) throw std::invalid_argument("k_rate: empty v window");
    auto neg = [&](double v) { return cgf(v, tau).m - u * v; };
    auto [v, fv] = boost::math::tools::brent_find_minima(neg, window.lo, window.hi, 40);
    (void)fv;
    for (int it = 0; it < 60; ++it) {
        const CgfValue c = cgf(v, tau);
        const double g = c.dm - u;
        if (std::fabs(g) <= 1e-14 * (1.0 + std::fabs(u))) break;
        if (!(c.d2m > 0.0)) break;
        double next = v - g / c.d2m;
        next = std::clamp(next, window.lo, window.hi);
        if (next == v) break;
        v = next;
    }
    KRateResult out;
    out.argmax = v;
    out.value = u * v - cgf(v, tau).m;
    const double edge = 1e-9 * (window.hi - window.lo);
    out.boundary = (v - window.lo) <= edge || (window.hi - v) <= edge;
    return out;
}

CgfValue m_tau_occupation(double v, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("m_tau_occupation: tau must be positive");
    const double x = v * tau;
    const double shift = std::max(0.0, x);
    using rule = boost::math::quadrature::gauss<double, 32>;
    const int panels = 1 + static_cast<int>(std::fabs(x) / 20.0);
    const double width = 0.5 * std::numbers::pi / panels;
    // pass 1: mass and mean of a = sin^2(theta) under the tilted weight
    auto accumulate = [&](auto&& g) {
        double acc = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double lo = p * width;
            acc += rule::integrate([&](double th) {
                const double s = std::sin(th);
                const double a = s * s;
                return g(a) * std::exp(x * a - shift);
            }, lo, lo + width);
        }
        return acc;
    };
    const double j0 = accumulate([](double) { return 1.0; });
    const double mean = accumulate([](double a) { return a; }) / j0;
    const double var = accumulate([mean](double a) { return (a - mean) * (a - mean); }) / j0;
    CgfValue out;
    out.m = shift + std::log(2.0 / std::numbers::pi * j0);
    out.dm = tau * mean;
    out.d2m = tau * tau * var;
    out.reduced_accuracy = std::fabs(x) > 700.0;
    return out;
}

Cgf occupation_cgf() { return [](double v, double tau) { return m_tau_occupation(v, tau); }; }

EmpiricalCgf::EmpiricalCgf(std::vector<double> samples, double tau) : samples_(std::move(samples)), tau_(tau) {
    if (samples_.empty()) throw std::invalid_argument("EmpiricalCgf: no samples");
    if (!(tau > 0.0)) throw std::invalid_argument("EmpiricalCgf: tau must be positive");
    for (double x : samples_) max_abs_ = std::max(max_abs_, std::fabs(x));
}

namespace {

CgfValue empirical_cgf_value(const std::vector<double>& xs, double v) {
    double top = -std::numeric_limits<double>::infinity();
    for (double x : xs) top = std::max(top, v * x);
    double s0 = 0.0, s1 = 0.0;
    for (double x : xs) {
        const double w = std::exp(v * x - top);
        s0 += w;
        s1 += w * x;
    }
    const double mean = s1 / s0;
    double s2 = 0.0;
    for (double x : xs) s2 += std::exp(v * x - top) * (x - mean) * (x - mean);
    CgfValue out;
    out.m = top + std::log(s0 / static_cast<double>(xs.size()));
    out.dm = mean;
    out.d2m = s2 / s0;
    return out;
}

}  // namespace

CgfValue EmpiricalCgf::operator()(double v) const { return empirical_cgf_value(samples_, v); }

bool EmpiricalCgf::low_effective_sample_size(double v) const {
    std::vector<double> e(samples_.size());
    double top = -std::numeric_limits<double>::infinity();
    for (double x : samples_) top = std::max(top, v * x);
    double total = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        e[i] = std::exp(v * samples_[i] - top);
        total += e[i];
    }
    const std::size_t k = std::min<std::size_t>(10, e.size());
    std::partial_sort(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k), e.end(), std::greater<>());
    double head = 0.0;
    for (std::size_t i = 0; i < k; ++i) head += e[i];
    return head > 0.5 * total;
}

Cgf EmpiricalCgf::scaled(double alpha) const {
    auto xs = std::make_shared<const std::vector<double>>(samples_);
    const double tau0 = tau_;
    return [xs, tau0, alpha](double v, double t) {
        const double s = std::pow(t / tau0, alpha);
        CgfValue c = empirical_cgf_value(*xs, v * s);
        c.dm *= s;
        c.d2m *= s * s;
        return c;
    };
}

EmpiricalCgfReport m_tau_empirical(Functional functional, double tau, const std::vector<double>& v_grid,
                                   std::size_t n_paths, std::uint64_t seed, unsigned threads) {
    SimConfig cfg;
    cfg.r = 0.0;
    cfg.T = tau;
    cfg.n_paths = n_paths;
    cfg.seed = seed;
    cfg.threads = threads;
    const auto paths = run_ensemble(cfg);
    EmpiricalCgf cgf(extract(paths, functional), tau);
    double vmax = 0.0;
    for (double v : v_grid) vmax = std::max(vmax, std::fabs(v));
    if (vmax * cgf.max_abs_sample() >= 700.0)
        throw std::invalid_argument("m_tau_empirical: v grid outside the stable window (|v| max|x| >= 700)");
    EmpiricalCgfReport rep{cgf, v_grid, {}};
    for (double v : v_grid) rep.ess_warning.push_back(cgf.low_effective_sample_size(v));
    return rep;
}

QuadraticResult quadratic_coefficient(double r, double alpha, double k1_second_deriv, int n_nodes) {
    if (!(r > 0.0)) throw std::domain_error("quadratic_coefficient: r must be positive");
    if (!(alpha > 1.0)) throw std::domain_error("quadratic_coefficient: alpha must exceed 1");
    if (!(k1_second_deriv > 0.0)) throw std::domain_error("quadratic_coefficient: K'' must be positive");
    const DiscreteMeasure grid = exponential_grid(n_nodes, r);
    const std::size_t n = grid.size();
    std::vector<double> g(n);
    double g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::pow(grid.nodes[i], alpha);
        g1 += grid.weights[i] * g[i];
        g2 += grid.weights[i] * g[i] * g[i];
    }
    const double K = k1_second_deriv;
    // A Q^{-1} A^T for the constraints (E nu = 0, r E[(m/r + nu + v) g] = 1)
    const double a11 = 1.0;
    const double a12 = r * g1;
    const double a22 = r * g1 * g1 + r * r * g2 + r * g2 / K;
    const double det = a11 * a22 - a12 * a12;
    if (!(std::fabs(det) > 1e-14 * a22)) throw std::runtime_error("quadratic_coefficient: singular normal equations");
    const double y1 = -a12 / det;
    const double y2 = a11 / det;
    QuadraticResult out;
    out.nodes = grid.nodes;
    out.m = r * g1 * y2;
    out.nu.resize(n);
    out.v.resize(n);
    double obj = 0.5 * out.m * out.m / r;
    for (std::size_t i = 0; i < n; ++i) {
        out.nu[i] = y1 + r * g[i] * y2;
        out.v[i] = g[i] * y2 / K;
        obj += 0.5 * grid.weights[i] * out.nu[i] * out.nu[i] + 0.5 * r * K * grid.weights[i] * out.v[i] * out.v[i];
    }
    out.value = obj;
    const double gam = std::tgamma(1.0 + alpha);
    out.feasible_bound = std::pow(r, 2.0 * alpha - 1.0) / (2.0 * gam * gam);
    return out;
}

double k1_second_derivative(const Cgf& cgf, double u_star, double h, Interval v_window) {
    const double kp = k_rate(u_star + h, 1.0, cgf, v_window).value;
    const double k0 = k_rate(u_star, 1.0, cgf, v_window).value;
    const double km = k_rate(u_star - h, 1.0, cgf, v_window).value;
    return (kp - 2.0 * k0 + km) / (h * h);
}

}  // namespace rbmlab::ldp
