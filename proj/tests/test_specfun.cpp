#include "oracles.hpp"

#include <rbmlab/analytic.hpp>
#include <rbmlab/errors.hpp>
#include <rbmlab/specfun.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sf = rbmlab::specfun;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

double erf_maclaurin(double x) {
    long double sum = 0, term = x;
    for (int n = 0; n < 40; ++n) {
        sum += term / (2 * n + 1);
        term *= -static_cast<long double>(x) * x / (n + 1);
    }
    return static_cast<double>(2 * sum / std::sqrt(std::numbers::pi_v<long double>));
}

double i0_ascending(double x) {
    long double sum = 0, term = 1, q = static_cast<long double>(x) * x / 4;
    for (int m = 0; m < 200; ++m) {
        sum += term;
        term *= q / ((m + 1.0L) * (m + 1.0L));
    }
    return static_cast<double>(sum);
}

double hyp1f2_direct(double x, int terms = 60) {
    // sum_m x^m / ((1/2)_m)^2, the m! of (1)_m cancels the 1/m!
    long double sum = 0, term = 1;
    for (int m = 0; m < terms; ++m) {
        sum += term;
        term *= static_cast<long double>(x) / ((0.5L + m) * (0.5L + m));
    }
    return static_cast<double>(sum);
}

double ai_int_oracle(double x) {
    auto f = [](double t) { return boost::math::airy_ai(t); };
    if (x >= 0) return 1.0 / 3.0 - boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, x, 12, 1e-13);
    return 1.0 / 3.0 + boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, x, 0.0, 12, 1e-13);
}

}  // namespace

TEST_CASE("gamma values and domain") {
    CHECK(sf::gamma(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(rel(sf::gamma(0.5), std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(rel(sf::gamma(2.5), 1.5 * 0.5 * std::sqrt(std::numbers::pi)) < 1e-13);
    for (double x = 0.5; x <= 50.0; x += 0.37) {
        double f = 1.0;  // recurrence against the value in [0.5, 1.5)
        double y = x;
        while (y >= 1.5) {
            y -= 1.0;
            f *= y;
        }
        CHECK(rel(sf::gamma(x), f * sf::gamma(y)) < 1e-13);
    }
    CHECK_THROWS_AS(sf::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(sf::gamma(-1.5), std::domain_error);
}

TEST_CASE("erf against Maclaurin oracle") {
    CHECK(sf::erf(0.0) == 0.0);
    CHECK(rel(sf::erf(1.0), erf_maclaurin(1.0)) < 1e-12);
    CHECK(sf::erf(1.0) == Approx(0.8427007929).epsilon(1e-10));
    for (double x = -2.0; x <= 2.0; x += 0.125) {
        if (x == 0.0) continue;
        CHECK(rel(sf::erf(x), erf_maclaurin(x)) < 1e-12);
    }
    for (double x = 2.0; x <= 6.0; x += 0.25) CHECK(rel(sf::erf(x), boost::math::erf(x)) < 1e-12);
    for (double x = 0.0; x <= 8.0; x += 0.01) {
        CHECK(sf::erf(x) + sf::erf(-x) == 0.0);
        CHECK(std::fabs(sf::erf(x)) <= 1.0);
    }
    CHECK(sf::erf(7.0) == 1.0);
    CHECK(sf::erf(-7.0) == -1.0);
}

TEST_CASE("bessel_i0 ascending-series oracle and branch overlap") {
    CHECK(sf::bessel_i0(0.0) == 1.0);
    CHECK(sf::bessel_i0(1.0) == Approx(1.2660658778).epsilon(1e-10));
    CHECK(sf::bessel_i0(2.0) == Approx(2.2795853023).epsilon(1e-10));
    for (double x = 0.0; x <= 15.0; x += 0.25) CHECK(rel(sf::bessel_i0(x), i0_ascending(x)) < 1e-12);
    for (double x = 15.0; x <= 80.0; x += 1.5)
        CHECK(rel(sf::bessel_i0(x), boost::math::cyl_bessel_i(0, x)) < 1e-12);
    for (double x : {14.0, 15.0, 16.0}) {
        const double a = sf::detail::bessel_i0_series(x).value;
        const double b = sf::detail::bessel_i0_asymptotic(x).value;
        CHECK(rel(a, b) < 1e-12);
    }
    CHECK_THROWS_AS(sf::bessel_i0(-0.1), std::domain_error);
}

TEST_CASE("hyp1f2 against direct summation") {
    CHECK(sf::hyp1f2(1, 0.5, 0.5, 0.0) == 1.0);
    CHECK(rel(sf::hyp1f2(1, 0.5, 0.5, 1.0), hyp1f2_direct(1.0)) < 1e-14);
    CHECK(rel(sf::hyp1f2(1, 0.5, 0.5, 0.25), hyp1f2_direct(0.25)) < 1e-14);
    for (double x : {0.01, 4.0, 25.0, 100.0, 400.0, 900.0})
        CHECK(rel(sf::hyp1f2(1, 0.5, 0.5, x), hyp1f2_direct(x, 400)) < 1e-11);
    const auto ev = sf::hyp1f2_eval(1, 0.5, 0.5, 900.0);
    CHECK(ev.terms_used <= sf::hyp1f2_term_cap);
    CHECK(ev.est_abs_error >= 0.0);
    CHECK_THROWS_AS(sf::hyp1f2(1, -2.0, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(sf::hyp1f2(1, 0.5, 0.0, 1.0), std::domain_error);
}

TEST_CASE("Airy values at the origin and against the contour integral") {
    const double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * sf::gamma(2.0 / 3.0));
    const double aip0 = -1.0 / (std::pow(3.0, 1.0 / 3.0) * sf::gamma(1.0 / 3.0));
    CHECK(sf::airy_ai(0.0) == Approx(ai0).epsilon(1e-14));
    CHECK(sf::airy_ai_prime(0.0) == Approx(aip0).epsilon(1e-14));
    CHECK(sf::airy_ai(0.0) == Approx(0.3550280539).epsilon(1e-10));
    CHECK(sf::airy_ai_prime(0.0) == Approx(-0.2588194038).epsilon(1e-10));
    CHECK(std::fabs(sf::airy_ai(5.0) - oracle::airy_ai(5.0)) < 1e-12);
    for (double x = -5.0; x <= 20.0; x += 0.25) {
        CHECK(std::fabs(sf::airy_ai(x) - oracle::airy_ai(x)) < 1e-12);
        CHECK(std::fabs(sf::airy_ai_prime(x) - oracle::airy_ai_prime(x)) < 1e-12);
    }
    CHECK_THROWS_AS(sf::airy_ai(-5.5), std::domain_error);
    CHECK_THROWS_AS(sf::airy_ai_prime(-5.5), std::domain_error);
}

TEST_CASE("Airy relative accuracy against Boost") {
    for (double x = 0.0; x <= 30.0; x += 0.5) {
        CHECK(rel(sf::airy_ai(x), boost::math::airy_ai(x)) < 1e-6);
        CHECK(rel(sf::airy_ai_prime(x), boost::math::airy_ai_prime(x)) < 1e-6);
    }
    for (double x = 8.0; x <= 30.0; x += 0.5) {
        CHECK(rel(sf::airy_ai(x), boost::math::airy_ai(x)) < 1e-12);
        CHECK(rel(sf::airy_ai_prime(x), boost::math::airy_ai_prime(x)) < 1e-12);
    }
}

TEST_CASE("Airy series and asymptotic branches agree at the switch") {
    for (double x : {7.5, 8.0, 8.5}) {
        CHECK(std::fabs(sf::detail::airy_ai_series(x).value - sf::detail::airy_ai_asymptotic(x).value) < 1e-12);
        CHECK(std::fabs(sf::detail::airy_ai_prime_series(x).value -
                        sf::detail::airy_ai_prime_asymptotic(x).value) < 1e-12);
        CHECK(rel(sf::detail::airy_ai_series(x).value, sf::detail::airy_ai_asymptotic(x).value) < 1e-6);
    }
}

TEST_CASE("Ai' is the derivative of Ai") {
    const double h = 1e-5;
    for (double x = -2.0; x <= 5.0; x += 0.1) {
        const double fd = (sf::airy_ai(x + h) - sf::airy_ai(x - h)) / (2 * h);
        CHECK(std::fabs(fd - sf::airy_ai_prime(x)) < 1e-8);
    }
}

TEST_CASE("integral Airy function") {
    CHECK(sf::airy_ai_int(40.0) == 0.0);
    CHECK(sf::airy_ai_int(100.0) == 0.0);
    CHECK(sf::airy_ai_int(0.0) == Approx(1.0 / 3.0).epsilon(1e-14));
    for (double x : {-5.0, -3.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0, 10.0})
        CHECK(std::fabs(sf::airy_ai_int(x) - ai_int_oracle(x)) < 1e-11);
    // AI' = -Ai, so AI decreases exactly where Ai > 0: right of Ai's first zero
    const double ai_zero = boost::math::airy_ai_zero<double>(1);
    double prev = sf::airy_ai_int(ai_zero);
    for (double x = ai_zero + 0.05; x < 40.0; x += 0.05) {
        const double cur = sf::airy_ai_int(x);
        if (cur > 0.0) CHECK(cur < prev);
        prev = cur;
    }
    for (double x = 0.0; x <= 30.0; x += 0.1) CHECK(sf::airy_ai(x) > 0.0);
}

TEST_CASE("first zero of Ai'") {
    const double z = sf::airy_prime_first_zero();
    CHECK(std::fabs(sf::airy_ai_prime(z)) <= 1e-12);
    CHECK(sf::airy_ai_prime(-1.2) * sf::airy_ai_prime(-0.9) < 0.0);
    CHECK(oracle::airy_ai_prime(-1.2) * oracle::airy_ai_prime(-0.9) < 0.0);
    const double ref = oracle::bisect(oracle::airy_ai_prime, -1.2, -0.9, 60);
    CHECK(std::fabs(z - ref) < 1e-8);
    CHECK(std::fabs(z + 1.0187929716) < 1e-8);
    CHECK(2.0 * std::pow(std::fabs(z), 3) / 27.0 == Approx(0.0783).epsilon(1e-4 / 0.0783));
}

TEST_CASE("AI / Ai' ratio keeps relative accuracy where both factors underflow") {
    auto ratio_oracle = [](double x) {
        boost::math::quadrature::exp_sinh<double> q;
        const double tail = q.integrate([x](double t) { return boost::math::airy_ai(x + t); });
        return tail / boost::math::airy_ai_prime(x);
    };
    for (double x : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0})
        CHECK(rel(sf::airy_int_over_prime(x), ratio_oracle(x)) < 1e-9);
    // large-x behaviour AI/Ai' -> -1/x
    CHECK(sf::airy_int_over_prime(1e4) * -1e4 == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("dual forms of the scaling function agree") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0})
        CHECK(rel(rbmlab::analytic::scaling_w(x), rbmlab::analytic::scaling_w_dual(x)) <= 1e-10);
}
