#include <rbmlab/analytic.hpp>
#include <rbmlab/errors.hpp>
#include <rbmlab/ldp.hpp>

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace rbmlab;
using namespace rbmlab::ldp;
namespace an = rbmlab::analytic;

TEST_CASE("zero of the occupation rate") {
    for (double r : {0.5, 1.0, 2.0}) {
        const auto res = variational_rate(occupation_problem(r, 0.5));
        CHECK(res.converged);
        CHECK(res.chi.value() <= 1e-3);
        CHECK(res.n == doctest::Approx(r).epsilon(1e-9));

        // the warm-start candidate itself costs nothing
        const auto grid = exponential_grid(64, r);
        std::vector<double> w;
        for (double t : grid.nodes) w.push_back(0.5 * t);
        CHECK(variational_objective(occupation_problem(r, 0.5), r, grid, w).value() <= 1e-10);
    }
}

TEST_CASE("occupation rate away from the mean") {
    std::vector<double> err;
    for (int n : {16, 32, 64}) {
        const auto res = variational_rate(occupation_problem(1.0, 0.8, n));
        REQUIRE(res.converged);
        CHECK(std::fabs(res.phi_residual) <= 1e-9);
        CHECK(std::fabs(res.time_residual) <= 1e-9);
        // primal objective at the argmin equals the dual value
        CHECK(res.chi.value() == doctest::Approx(res.dual_value).epsilon(1e-8));
        err.push_back(std::fabs(res.chi.value() - 0.2));
        CHECK(err.back() <= 0.02);
    }
    CHECK(err[1] <= err[0] + 1e-12);
    CHECK(err[2] <= err[1] + 1e-12);

    for (double r : {0.5, 2.0})
        for (double phi : {0.1, 0.3, 0.7, 0.95}) {
            const auto res = variational_rate(occupation_problem(r, phi, 32));
            const double exact = an::chi_a(phi, r).value();
            CHECK(res.chi.value() >= exact - 1e-8);
            CHECK(res.chi.value() <= exact * 1.1 + 1e-8);
            CHECK(res.chi.value() <= r + 1e-9);
        }
}

TEST_CASE("discrete SCGF") {
    const auto p = occupation_problem(1.0, 0.5, 32);
    const auto grid = exponential_grid(32, 1.0);
    const auto d0 = discrete_scgf(p, grid, 0.0);
    CHECK(std::fabs(d0.lambda) <= 1e-14);
    CHECK(d0.slope == doctest::Approx(0.5).epsilon(1e-12));
    for (double k : {-3.0, -0.5, 0.4, 2.0}) {
        const auto d = discrete_scgf(p, grid, k);
        CHECK(d.lambda == doctest::Approx(an::scgf_a(k, 1.0)).epsilon(1e-7));
        CHECK(d.slope == doctest::Approx(an::scgf_a_prime(k, 1.0)).epsilon(1e-6));
        const double h = 1e-4;
        const double fd = (discrete_scgf(p, grid, k + h).slope - discrete_scgf(p, grid, k - h).slope) / (2 * h);
        CHECK(d.curvature == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("unreachable targets and bad problems") {
    const auto res = variational_rate(occupation_problem(1.0, 1.5, 16));
    CHECK(res.chi.is_infinite());
    CHECK_FALSE(res.diagnostic.empty());
    CHECK(variational_rate(occupation_problem(1.0, -0.2, 16)).chi.is_infinite());
    CHECK_THROWS_AS(variational_rate(occupation_problem(0.0, 0.5)), std::domain_error);
    auto p = occupation_problem(1.0, 0.5);
    p.unit_cgf = nullptr;
    CHECK_THROWS_AS(variational_rate(p), std::invalid_argument);

    const auto grid = exponential_grid(8, 1.0);
    CHECK(variational_objective(occupation_problem(1.0, 0.5), 0.0, grid, std::vector<double>(8, 0.0)).value() == 1.0);
    CHECK_THROWS_AS(variational_objective(occupation_problem(1.0, 0.5), 1.0, grid, {}), std::invalid_argument);
}

TEST_CASE("absolute area is flat above the mean") {
    const auto rep = m_tau_empirical(Functional::absarea, 1.0, {0.0}, 20000, 21);
    const double cstar = an::absarea_mean_rate(1.0);
    CHECK_THROWS_AS(absarea_problem(1.0, cstar, EmpiricalCgf({1.0, 2.0}, 2.0)), std::invalid_argument);
    for (double f : {1.25, 1.5, 2.0}) {
        double prev = INFINITY;
        for (int n : {16, 32, 64}) {
            const auto res = variational_rate(absarea_problem(1.0, f * cstar, rep.cgf, n));
            REQUIRE(res.chi.is_finite());
            CHECK(res.chi.value() >= 0.0);
            CHECK(res.chi.value() <= prev);
            prev = res.chi.value();
        }
        CHECK(prev <= 0.05);
    }
}
