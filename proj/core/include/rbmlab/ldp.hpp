#pragma once

#include "rbmlab/extended_real.hpp"
#include "rbmlab/simulate.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rbmlab::ldp {

// Diffusion constant of the underlying Brownian motion; fixed.
inline constexpr double sigma = 1.0;

// ---- component rate functions ------------------------------------------

// n log(n/r) - n + r, with the n = 0 limit r.
double i_rate(double n, double r);

// Discrete probability measure on a time grid. weight_i / cell_width_i is
// read as a piecewise-constant density.
struct DiscreteMeasure {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> cell_widths;

    std::size_t size() const { return nodes.size(); }
    // log of the Exp(rate) density at a node
    static double reference_log_density(double t, double rate);
    // Throws std::invalid_argument unless weights are normalized within
    // 1e-12 and nodes strictly increasing.
    void check() const;
};

// Gauss-Laguerre grid adapted to Exp(rate): weights are the rule weights
// (the grid projection of Exp(rate)), cell widths w_i / (rate e^{-rate t_i}).
DiscreteMeasure exponential_grid(int n_nodes, double rate);
// Same nodes and cells with weights proportional to cell_width * density.
DiscreteMeasure project_density(const DiscreteMeasure& grid, const std::function<double(double)>& density);
DiscreteMeasure point_mass(double t);

// Relative entropy of mu with respect to Exp(rate) on mu's cells. Infinite
// when mass sits on a zero-width cell or at a negative time.
ExtendedReal j_rate(const DiscreteMeasure& mu, double rate);

// Cumulant generating function value with first two derivatives in v.
struct CgfValue {
    double m = 0.0;
    double dm = 0.0;
    double d2m = 0.0;
    bool reduced_accuracy = false;
};
using Cgf = std::function<CgfValue(double v, double tau)>;

struct Interval {
    double lo, hi;
};

struct KRateResult {
    double value = 0.0;
    double argmax = 0.0;
    bool boundary = false;  // maximizer on the window edge: value is a lower bound
};

// K_tau(u) = sup_v { u v - M_tau(v) } over v in window: Brent maximization
// followed by Newton polish of u = M'_tau(v).
KRateResult k_rate(double u, double tau, const Cgf& cgf, Interval v_window);

// log E exp(v A_tau) for the reset-free occupation time (arcsine law).
CgfValue m_tau_occupation(double v, double tau);
Cgf occupation_cgf();

// Empirical cgf of a functional over reset-free paths of duration tau.
class EmpiricalCgf {
public:
    EmpiricalCgf(std::vector<double> samples, double tau);

    CgfValue operator()(double v) const;
    // True when the ten largest exp(v x) weights carry more than half the mass.
    bool low_effective_sample_size(double v) const;
    double tau() const { return tau_; }
    const std::vector<double>& samples() const { return samples_; }
    double max_abs_sample() const { return max_abs_; }
    // Wraps as a Cgf using M_t(v) = M_tau(v (t/tau)^alpha).
    Cgf scaled(double alpha) const;

private:
    std::vector<double> samples_;
    double tau_;
    double max_abs_ = 0.0;
};

struct EmpiricalCgfReport {
    EmpiricalCgf cgf;
    std::vector<double> v_grid;
    std::vector<bool> ess_warning;
};

// Throws std::invalid_argument when max |v| * max |sample| >= 700 on v_grid.
EmpiricalCgfReport m_tau_empirical(Functional functional, double tau, const std::vector<double>& v_grid,
                                   std::size_t n_paths, std::uint64_t seed, unsigned threads = 1);

// ---- variational formula -------------------------------------------------

struct VariationalProblem {
    double r = 1.0;
    double phi = 0.5;
    int n_nodes = 64;
    double alpha = 1.0;  // M_t(v) = M_1(v t^alpha)
    Cgf unit_cgf;        // cgf at tau = 1 (called with tau = 1)
    std::string label;
};

VariationalProblem occupation_problem(double r, double phi, int n_nodes = 64);
VariationalProblem absarea_problem(double r, double phi, const EmpiricalCgf& unit_cgf, int n_nodes = 64);

struct VariationalBudget {
    int max_iterations = 200;
    double tolerance = 1e-12;
};

struct VariationalResult {
    ExtendedReal chi;
    double n = 0.0;
    DiscreteMeasure mu;
    std::vector<double> w;
    double k = 0.0;       // multiplier of the phi constraint
    double lambda = 0.0;  // discrete SCGF at k
    double dual_value = 0.0;
    double phi_residual = 0.0;
    double time_residual = 0.0;
    bool converged = true;
    std::string diagnostic;
};

ExtendedReal variational_objective(const VariationalProblem& problem, double n, const DiscreteMeasure& mu,
                                   const std::vector<double>& w);
VariationalResult variational_rate(const VariationalProblem& problem, VariationalBudget budget = {});

// Discrete SCGF: root in lambda of sum_i W_i exp(M_{t_i}(k) - lambda t_i) = 1.
struct DiscreteScgf {
    double lambda;
    double slope;      // lambda'(k)
    double curvature;  // lambda''(k)
};
DiscreteScgf discrete_scgf(const VariationalProblem& problem, const DiscreteMeasure& grid, double k);

// ---- quadratic coefficient -------------------------------------------------

struct QuadraticResult {
    double value = 0.0;
    double m = 0.0;
    std::vector<double> nodes, nu, v;
    double feasible_bound = 0.0;  // r^{2 alpha - 1} / (2 Gamma(1 + alpha)^2)
};

// Minimizes m^2/(2r) + 1/2 E_r[nu^2] + (r/2) K'' E_r[v^2] subject to
// E_r[nu] = 0 and r E_r[(m/r + nu + v) t^alpha] = 1 on a Gauss-Laguerre grid.
QuadraticResult quadratic_coefficient(double r, double alpha, double k1_second_deriv, int n_nodes = 64);

// K''_1(u*) by central differences of k_rate.
double k1_second_derivative(const Cgf& cgf, double u_star, double h, Interval v_window);

// ---- SCGF and Legendre ------------------------------------------------------

// Largest root lambda of r G_0(k, lambda + r) = 1 for the absolute area, k < 0.
double scgf_c(double k, double r, double lower_offset = 1e-6);

struct RateFunctionCurve {
    std::vector<double> phi;
    std::vector<double> chi;
    std::vector<double> slope;  // d chi / d phi at each point (the generating k)
    std::vector<double> k_grid;
    std::optional<double> flat_from;

    bool is_flat(std::size_t i) const { return flat_from && phi[i] >= *flat_from; }
};

// Parametric Legendre transform chi(c_k) = k c_k - lambda(k) with c_k from
// three-point differences on the (possibly nonuniform) k grid. Throws
// std::domain_error on a convexity violation below -1e-6.
RateFunctionCurve legendre(const std::function<double(double)>& scgf, const std::vector<double>& k_grid,
                           std::optional<double> flat_value = std::nullopt);
RateFunctionCurve legendre_samples(const std::vector<double>& k, const std::vector<double>& lambda,
                                   std::optional<double> flat_value = std::nullopt);

// 200 points log-spaced over [-1e4, -1e-4] r^{3/2}; r = 0 uses scale 1.
std::vector<double> absarea_k_grid(double r, int n = 200);

RateFunctionCurve chi_c_curve(double r, unsigned threads = 1);
// Rate function of C_T/T: +inf marker for c <= 0, curve interpolation
// below c* = 1/sqrt(2r), exactly 0 from c* on.
ExtendedReal chi_c(double c, double r);
ExtendedReal interpolate_curve(const RateFunctionCurve& curve, double phi);

}  // namespace rbmlab::ldp
