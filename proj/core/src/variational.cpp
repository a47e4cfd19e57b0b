#include "rbmlab/ldp.hpp"

#include "rbmlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rbmlab::ldp {

VariationalProblem occupation_problem(double r, double phi, int n_nodes) {
    VariationalProblem p;
    p.r = r;
    p.phi = phi;
    p.n_nodes = n_nodes;
    p.alpha = 1.0;
    p.unit_cgf = occupation_cgf();
    p.label = "occupation";
    return p;
}

VariationalProblem absarea_problem(double r, double phi, const EmpiricalCgf& unit_cgf, int n_nodes) {
    if (unit_cgf.tau() != 1.0) throw std::invalid_argument("absarea_problem: cgf must be estimated at tau = 1");
    VariationalProblem p;
    p.r = r;
    p.phi = phi;
    p.n_nodes = n_nodes;
    p.alpha = 1.5;
    p.unit_cgf = unit_cgf.scaled(1.5);
    p.label = "absarea";
    return p;
}

namespace {

void check_problem(const VariationalProblem& p) {
    if (!(p.r > 0.0)) throw std::domain_error("variational: r must be positive");
    if (!p.unit_cgf) throw std::invalid_argument("variational: missing cgf");
    if (!(p.alpha > 0.0)) throw std::domain_error("variational: alpha must be positive");
}

// M_t(v) = M_1(v t^alpha)
CgfValue node_cgf(const VariationalProblem& p, double v, double t) {
    const double s = std::pow(t, p.alpha);
    CgfValue c = p.unit_cgf(v * s, 1.0);
    c.dm *= s;
    c.d2m *= s * s;
    return c;
}

Cgf time_cgf(const VariationalProblem& p) {
    return [p](double v, double t) { return node_cgf(p, v, t); };
}

struct NodeState {
    std::vector<CgfValue> c;
};

NodeState evaluate_nodes(const VariationalProblem& p, const DiscreteMeasure& grid, double k) {
    NodeState s;
    s.c.reserve(grid.size());
    for (double t : grid.nodes) s.c.push_back(node_cgf(p, k, t));
    return s;
}

double log_z(const DiscreteMeasure& grid, const NodeState& ns, double lambda, double* mean_t) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i)
        top = std::max(top, std::log(grid.weights[i]) + ns.c[i].m - lambda * grid.nodes[i]);
    double s = 0.0, st = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = std::exp(std::log(grid.weights[i]) + ns.c[i].m - lambda * grid.nodes[i] - top);
        s += e;
        st += e * grid.nodes[i];
    }
    if (mean_t) *mean_t = st / s;
    return top + std::log(s);
}

std::vector<double> tilted_weights(const DiscreteMeasure& grid, const NodeState& ns, double lambda) {
    std::vector<double> mu(grid.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        mu[i] = std::log(grid.weights[i]) + ns.c[i].m - lambda * grid.nodes[i];
        top = std::max(top, mu[i]);
    }
    double s = 0.0;
    for (double& m : mu) {
        m = std::exp(m - top);
        s += m;
    }
    for (double& m : mu) m /= s;
    return mu;
}

DiscreteScgf solve_discrete_scgf(const DiscreteMeasure& grid, const NodeState& ns) {
    double lambda = 0.0;
    bool done = false;
    for (int it = 0; it < 300; ++it) {
        double mt = 0.0;
        const double f = log_z(grid, ns, lambda, &mt);
        if (!std::isfinite(f)) break;
        const double step = f / mt;
        lambda += step;
        if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(lambda))) {
            done = true;
            break;
        }
    }
    if (!done || !std::isfinite(lambda)) throw convergence_error("discrete_scgf: root in lambda not found");
    const auto mu = tilted_weights(grid, ns, lambda);
    double et = 0.0, edm = 0.0, ed2m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        et += mu[i] * grid.nodes[i];
        edm += mu[i] * ns.c[i].dm;
        ed2m += mu[i] * ns.c[i].d2m;
    }
    const double slope = edm / et;
    double var = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = ns.c[i].dm - slope * grid.nodes[i];
        var += mu[i] * d * d;
    }
    return {lambda, slope, (ed2m + var) / et};
}

Interval bracket_for_slope(const Cgf& cgf, double tau, double u) {
    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const bool lo_ok = cgf(lo, tau).dm < u;
        const bool hi_ok = cgf(hi, tau).dm > u;
        if (lo_ok && hi_ok) return {lo, hi};
        if (!lo_ok) lo *= 2.0;
        if (!hi_ok) hi *= 2.0;
    }
    return {std::nan(""), std::nan("")};
}

}  // namespace

DiscreteScgf discrete_scgf(const VariationalProblem& problem, const DiscreteMeasure& grid, double k) {
    check_problem(problem);
    return solve_discrete_scgf(grid, evaluate_nodes(problem, grid, k));
}

ExtendedReal variational_objective(const VariationalProblem& problem, double n, const DiscreteMeasure& mu,
                                   const std::vector<double>& w) {
    check_problem(problem);
    if (w.size() != mu.size()) throw std::invalid_argument("variational_objective: w size mismatch");
    if (!(n > 0.0)) return i_rate(0.0, problem.r);
    const ExtendedReal j = j_rate(mu, n);
    if (j.is_infinite()) return ExtendedReal::infinity();
    const Cgf cgf = time_cgf(problem);
    double kterm = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu.weights[i] <= 0.0) continue;
        const Interval win = bracket_for_slope(cgf, mu.nodes[i], w[i]);
        if (std::isnan(win.lo)) return ExtendedReal::infinity();
        kterm += mu.weights[i] * k_rate(w[i], mu.nodes[i], cgf, win).value;
    }
    return i_rate(n, problem.r) + n * j.value() + n * kterm;
}

VariationalResult variational_rate(const VariationalProblem& problem, VariationalBudget budget) {
    check_problem(problem);
    const DiscreteMeasure grid = exponential_grid(problem.n_nodes, problem.r);
    const double phi = problem.phi;

    VariationalResult out;
    auto unreachable = [&](const std::string& why) {
        out.chi = ExtendedReal::infinity();
        out.diagnostic = why;
        out.converged = true;
        return out;
    };

    auto slope_at = [&](double k, DiscreteScgf* d) {
        try {
            *d = discrete_scgf(problem, grid, k);
            return std::isfinite(d->slope);
        } catch (const convergence_error&) {
            return false;
        }
    };

    // the slope is monotone in k; once doubling k no longer moves it the
    // target lies beyond its limit
    constexpr double k_cap = 1e4;
    auto saturated = [&](const DiscreteScgf& prev, const DiscreteScgf& d, double k) {
        return std::fabs(k) > 1.0 && std::fabs(d.slope - prev.slope) <= 1e-12 * std::max(1.0, std::fabs(phi - d.slope));
    };

    DiscreteScgf d0{};
    if (!slope_at(0.0, &d0)) throw convergence_error("variational_rate: discrete SCGF failed at k = 0");
    double k_lo = 0.0, k_hi = 0.0;
    DiscreteScgf dlo = d0, dhi = d0;
    if (d0.slope < phi) {
        double step = 0.01;
        while (true) {
            DiscreteScgf d{};
            if (step > k_cap || !slope_at(step, &d) || saturated(dlo, d, step))
                return unreachable("phi above the reachable range of the discretization");
            if (d.slope >= phi) {
                k_hi = step;
                dhi = d;
                break;
            }
            k_lo = step;
            dlo = d;
            step *= 2.0;
        }
    } else if (d0.slope > phi) {
        double step = -0.01;
        while (true) {
            DiscreteScgf d{};
            if (step < -k_cap || !slope_at(step, &d) || saturated(dhi, d, step))
                return unreachable("phi below the reachable range of the discretization");
            if (d.slope <= phi) {
                k_lo = step;
                dlo = d;
                break;
            }
            k_hi = step;
            dhi = d;
            step *= 2.0;
        }
    }

    double k = d0.slope == phi ? 0.0 : (dlo.slope == phi ? k_lo : k_hi);
    DiscreteScgf dk = d0.slope == phi ? d0 : (dlo.slope == phi ? dlo : dhi);
    bool converged = dk.slope == phi;
    for (int it = 0; it < budget.max_iterations && !converged; ++it) {
        double next = k - (dk.slope - phi) / dk.curvature;
        if (!(next > k_lo && next < k_hi) || !std::isfinite(next)) next = 0.5 * (k_lo + k_hi);
        DiscreteScgf dn{};
        if (!slope_at(next, &dn)) throw convergence_error("variational_rate: discrete SCGF failed");
        if (dn.slope < phi) k_lo = next;
        else k_hi = next;
        k = next;
        dk = dn;
        if (std::fabs(dk.slope - phi) <= budget.tolerance * std::max(1.0, std::fabs(phi)) ||
            k_hi - k_lo <= 1e-15 * std::max(1.0, std::fabs(k)))
            converged = true;
    }

    const NodeState ns = evaluate_nodes(problem, grid, k);
    const DiscreteScgf fin = solve_discrete_scgf(grid, ns);
    out.k = k;
    out.lambda = fin.lambda;
    out.dual_value = k * phi - fin.lambda;
    out.mu = grid;
    out.mu.weights = tilted_weights(grid, ns, fin.lambda);
    double et = 0.0, ew = 0.0;
    out.w.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.w[i] = ns.c[i].dm;
        et += out.mu.weights[i] * grid.nodes[i];
        ew += out.mu.weights[i] * out.w[i];
    }
    out.n = 1.0 / et;
    out.time_residual = out.n * et - 1.0;
    out.phi_residual = out.n * ew - phi;
    out.chi = variational_objective(problem, out.n, out.mu, out.w);
    out.converged = converged;
    if (!converged) out.diagnostic = "iteration budget exhausted; returning best incumbent";
    return out;
}

}  // namespace rbmlab::ldp
