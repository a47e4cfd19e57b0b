#include <rbmlab/analytic.hpp>
#include <rbmlab/specfun.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace an = rbmlab::analytic;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// 50-digit evaluations of the closed forms: rho, f1, f2, f3, E[B^2], E[B^4] at r = 1, T = rho.
struct Reference {
    double rho, f1, f2, f3, b2, b4;
};
constexpr Reference reference[] = {
    {0.001, 0.53181667871961731919, 0.092025226477303436183, 0.37485420624166810495, 3.3316671665555753938e-10,
     3.331000862873721223e-19},
    {0.01, 0.5308614699094422851, 0.09173171644661683608, 0.37354561668103053279, 3.3167165557536710203e-7,
     3.3100860884020632774e-13},
    {0.1, 0.52150839137378573533, 0.088833306161032715943, 0.3608043084343063919, 0.00031715575103020728985,
     3.1084137191109919627e-7},
    {0.5, 0.4839414490382866996, 0.076821889017491558504, 0.31102121511476820126, 0.032653298563167118019,
     0.0036832581154552254424},
    {1.0, 0.44470238577675196133, 0.063908251305931259274, 0.26166846322146638439, 0.20727664702865392957,
     0.16792425502646907138},
    {2.0, 0.38493288429545962058, 0.044494316206284642153, 0.19266764161830634595, 1.0826822658929015352,
     5.5813669348442906033},
    {10.0, 0.21242662398116560511, 0.0058755650229811526326, 0.051000635599016674788, 16.001089598314299636,
     1568.8457223149225485},
    {100.0, 0.070357124728061478678, 0.000073375, 0.0050235, 196.0, 131160.0},
};

double w_series_oracle(double x) {
    long double sum = 0;
    for (int j = 0; j < 50; ++j) {
        const long double g = std::tgamma((j + 1) / 2.0L);
        sum += std::pow(static_cast<long double>(x), j) / (g * g);
    }
    return static_cast<double>(sum / x);
}

// int_0^T f(a) da through a = T sin^2(theta)
template <class F>
double integrate_occupation(F f, double T) {
    auto g = [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        return f(T * s * s) * 2.0 * T * s * c;
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, std::numbers::pi / 2, 15, 1e-14);
}

double sup_over(const std::function<double(double)>& f, double lo, double hi) {
    auto neg = [&](double x) { return -f(x); };
    const auto res = boost::math::tools::brent_find_minima(neg, lo, hi, 60);
    return -res.second;
}

}  // namespace

TEST_CASE("scaling function W") {
    CHECK(rel(an::scaling_w(0.01), w_series_oracle(0.01)) < 1e-13);
    CHECK(an::scaling_w(0.01) == Approx(32.844).epsilon(1e-4));
    CHECK(an::scaling_w(0.01) * std::numbers::pi * 0.01 == Approx(1.0).epsilon(0.04));
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) CHECK(rel(an::scaling_w(x), w_series_oracle(x)) < 1e-12);
    // twice the I0(2x) asymptote: the even and odd halves of the series grow alike
    const double big = std::exp(40.0) / std::sqrt(20.0 * std::numbers::pi);
    CHECK(an::scaling_w(20.0) / big == Approx(1.0).epsilon(0.02));
    CHECK(rel(an::scaling_w(1.0), rbmlab::specfun::bessel_i0(2.0) +
                                      rbmlab::specfun::hyp1f2(1, 0.5, 0.5, 1.0) / std::numbers::pi) < 1e-10);
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0})
        CHECK(rel(an::scaling_w(x), an::scaling_w_dual(x)) <= 1e-10);
    for (double x : {0.3, 30.0, 300.0})
        CHECK(an::log_scaling_w(x) == Approx(std::log(an::scaling_w(x))).epsilon(1e-12));
    for (double x : {400.0, 2000.0})
        CHECK(an::log_scaling_w(x) == Approx(2 * x - 0.5 * std::log(std::numbers::pi * x)).epsilon(1e-6));
    CHECK(std::isfinite(an::log_scaling_w(1e5)));
    CHECK_THROWS_AS(an::scaling_w(0.0), std::domain_error);
}

TEST_CASE("occupation density normalization and symmetry") {
    for (auto [r, T] : {std::pair{1.0, 5.0}, {2.0, 3.0}, {0.5, 8.0}, {10.0, 4.0}}) {
        auto p = [r = r, T = T](double a) { return an::occupation_density(a, T, r); };
        CHECK(std::fabs(integrate_occupation(p, T) - 1.0) < 1e-6);
        CHECK(std::fabs(integrate_occupation([&](double a) { return a * p(a); }, T) - T / 2) < 1e-10);
        for (double a = 0.1; a < T; a += 0.37) {
            CHECK(p(a) >= 0.0);
            CHECK(rel(p(a), p(T - a)) < 1e-12);
        }
    }
    CHECK(an::occupation_density(2.5, 5.0, 1.0) == an::occupation_density(5.0 - 2.5, 5.0, 1.0));
    CHECK_THROWS_AS(an::occupation_density(0.0, 5.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(an::occupation_density(5.0, 5.0, 1.0), std::domain_error);
    CHECK(std::isfinite(an::occupation_density(1e-12, 5.0, 1.0)));
}

TEST_CASE("arcsine law") {
    CHECK(an::occupation_density_free(0.5, 1.0) == Approx(2.0 / std::numbers::pi));
    CHECK(an::occupation_density_free(0.25, 1.0) == Approx(0.7351).epsilon(1e-4));
    CHECK(an::occupation_density_free(0.25, 1.0) == an::occupation_density_free(0.75, 1.0));
    CHECK_THROWS_AS(an::occupation_density_free(1.0, 1.0), std::domain_error);
    CHECK(an::occupation_density(0.5, 1.0, 1e-3) == Approx(0.6366).epsilon(0.01));
    for (double a = 0.1; a <= 0.9; a += 0.01)
        CHECK(rel(an::occupation_density(a, 1.0, 1e-3), an::occupation_density_free(a, 1.0)) <= 0.01);
}

TEST_CASE("large-T occupation density") {
    const double T = 40.0, r = 1.0;
    const auto half = an::occupation_density_asymptotic(0.5, T, r);
    CHECK(half.value == Approx(std::sqrt(r) / (std::sqrt(std::numbers::pi * T) * std::pow(0.25, 0.25))));
    CHECK_FALSE(half.below_validity);
    CHECK(an::occupation_density_asymptotic(0.3, 5.0, 1.0).below_validity);
    const double ratio = an::occupation_density(0.3 * T, T, r) / an::occupation_density_asymptotic(0.3, T, r).value;
    CHECK(ratio == Approx(1.0).epsilon(0.05));
    for (double a = 0.05; a < 0.95; a += 0.05)
        CHECK(an::occupation_density_asymptotic(a, T, r).value <= half.value);
    double prev = std::fabs(an::occupation_density(0.3 * 20, 20, r) / an::occupation_density_asymptotic(0.3, 20, r).value - 1);
    for (double t : {40.0, 80.0, 160.0}) {
        const double dev = std::fabs(an::occupation_density(0.3 * t, t, r) / an::occupation_density_asymptotic(0.3, t, r).value - 1);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("occupation rate function and SCGF") {
    CHECK(an::chi_a(0.5, 3.0).value() == 0.0);
    CHECK(an::chi_a(1.0, 1.0).value() == 1.0);
    CHECK(an::chi_a(0.0, 2.0).value() == 2.0);
    CHECK(an::chi_a(0.9, 1.0).value() == Approx(0.4));
    CHECK(an::chi_a(1.1, 1.0).is_infinite());
    CHECK(an::chi_a(-0.1, 1.0).is_infinite());
    for (double a = 0.0; a <= 1.0; a += 0.01) CHECK(an::chi_a(a, 1.5).value() <= 1.5 + 1e-15);

    CHECK(an::scgf_a(0.0, 1.7) == 0.0);
    CHECK(an::scgf_a(-3.0, 2.0) == Approx(-1.0).epsilon(1e-14));
    CHECK(an::scgf_a_prime(0.0, 1.0) == Approx(0.5));
    for (double k = -50; k <= 50; k += 0.5) {
        const double h = 1e-4;
        const double fd = (an::scgf_a(k + h, 1.0) - an::scgf_a(k - h, 1.0)) / (2 * h);
        CHECK(an::scgf_a_prime(k, 1.0) == Approx(fd).epsilon(1e-7));
        const double d2 = an::scgf_a(k + h, 1.0) - 2 * an::scgf_a(k, 1.0) + an::scgf_a(k - h, 1.0);
        CHECK(d2 >= -1e-14);
    }
    CHECK(std::isfinite(an::scgf_a(-1e9, 1.0)));
    CHECK(an::scgf_a(-1e9, 1.0) == Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("occupation Legendre duality") {
    for (double r : {0.5, 1.0, 2.0}) {
        for (double k = -20 * r; k <= 20 * r; k += 0.5 * r) {
            const double sup = sup_over([&](double a) { return k * a - an::chi_a(a, r).value(); }, 0.0, 1.0);
            CHECK(std::fabs(sup - an::scgf_a(k, r)) < 1e-10);
        }
        for (double a = 0.05; a <= 0.95 + 1e-12; a += 0.05) {
            const double sup = sup_over([&](double k) { return k * a - an::scgf_a(k, r); }, -100 * r, 100 * r);
            CHECK(std::fabs(sup - an::chi_a(a, r).value()) < 1e-10);
        }
    }
}

TEST_CASE("area moments") {
    for (const auto& ref : reference) {
        CHECK(rel(an::area_second_moment(ref.rho, 1.0), ref.b2) < 1e-12);
        CHECK(rel(an::area_fourth_moment(ref.rho, 1.0), ref.b4) < 1e-10);
    }
    CHECK(an::area_second_moment(1.0, 1.0) == Approx(0.2072766).epsilon(1e-7));
    CHECK(an::area_second_moment(1.0, 1.0) == Approx(2.0 * (3.0 / std::exp(1.0) - 1.0)).epsilon(1e-14));
    const double T = 2.0;
    CHECK(rel(an::area_second_moment(T, 1e-6 / T), T * T * T / 3.0) <= 1e-5);
    CHECK(rel(an::area_second_moment(1e3, 1.0), 2e3) <= 0.01);
    CHECK(rel(an::area_second_moment(1e4, 1.0) / 1e4, an::clt_variance(1.0)) <= 1e-3);
    CHECK(an::clt_variance(1.0) == 2.0);
    CHECK(an::clt_variance(2.0) == 0.5);
    CHECK(rel(an::area_fourth_moment(T, 1e-6 / T), std::pow(T, 6) / 3.0) <= 1e-5);
    CHECK(rel(an::area_fourth_moment(1e4, 1.0), 3.0 * 2e4 * 2e4) <= 0.01);
    for (double r : {0.1, 1.0, 3.0})
        for (double t : {0.01, 0.3, 1.0, 5.0, 40.0}) {
            const double m2 = an::area_second_moment(t, r), m4 = an::area_fourth_moment(t, r);
            CHECK(m2 > 0.0);
            CHECK(m4 >= m2 * m2);
        }
    // branch continuity
    for (double rho : {0.5, 2.0}) {
        CHECK(rel(an::area_second_moment(rho * (1 - 1e-12), 1.0), an::area_second_moment(rho * (1 + 1e-12), 1.0)) < 1e-10);
        CHECK(rel(an::area_fourth_moment(rho * (1 - 1e-12), 1.0), an::area_fourth_moment(rho * (1 + 1e-12), 1.0)) < 1e-10);
    }
}

TEST_CASE("area crossover") {
    CHECK(an::area_crossover_time(1.0) == Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK(an::area_crossover_time(2.0) == Approx(std::sqrt(6.0) / 2).epsilon(1e-15));
    for (double r : {0.3, 1.0, 2.0, 7.0}) {
        const double T = an::area_crossover_time(r);
        CHECK(std::fabs(T * T * T / 3.0 - 2.0 * T / (r * r)) / (2.0 * T / (r * r)) <= 1e-12);
    }
}

TEST_CASE("absolute area moments") {
    for (const auto& ref : reference) {
        CHECK(rel(an::absarea_f1(ref.rho), ref.f1) < 1e-12);
        CHECK(rel(an::absarea_f2(ref.rho), ref.f2) < 1e-9);
        CHECK(rel(an::absarea_f3(ref.rho), ref.f3) < 1e-12);
    }
    CHECK(std::fabs(an::absarea_f1(1e-6) - 4.0 / (3.0 * std::sqrt(2 * std::numbers::pi))) <= 1e-6);
    CHECK(an::absarea_free_mean == Approx(4.0 / (3.0 * std::sqrt(2 * std::numbers::pi))).epsilon(1e-15));
    CHECK(an::absarea_f2(1e-6) == Approx(0.375 - an::absarea_free_mean * an::absarea_free_mean).epsilon(1e-5));
    CHECK(an::absarea_f2(1e-6) == Approx(0.0920576).epsilon(1e-5));
    CHECK(std::fabs(std::sqrt(1e4) * an::absarea_f1(1e4) - 1.0 / std::sqrt(2.0)) <= 0.01 / std::sqrt(2.0));
    double prev = an::absarea_f1(0.01);
    for (double rho : {0.1, 1.0, 10.0, 100.0}) {
        CHECK(an::absarea_f1(rho) < prev);
        prev = an::absarea_f1(rho);
    }
    for (double rho = 1e-4; rho < 1e4; rho *= 1.3) CHECK(an::absarea_f2(rho) >= 0.0);
    CHECK(rel(an::absarea_f1(0.5 * (1 - 1e-12)), an::absarea_f1(0.5 * (1 + 1e-12))) < 1e-10);
    CHECK(rel(an::absarea_f3(0.5 * (1 - 1e-12)), an::absarea_f3(0.5 * (1 + 1e-12))) < 1e-10);

    CHECK(an::absarea_mean(10.0, 1.0) == Approx(std::pow(10.0, 1.5) * reference[6].f1).epsilon(1e-12));
    CHECK(an::absarea_variance(10.0, 1.0) == Approx(1000.0 * reference[6].f2).epsilon(1e-9));
    CHECK(an::absarea_second_moment(10.0, 1.0) == Approx(1000.0 * reference[6].f3).epsilon(1e-12));
    CHECK(an::absarea_mean_rate(1.0) == Approx(0.7071068).epsilon(1e-7));
    CHECK(an::absarea_mean_rate(2.0) == Approx(0.5).epsilon(1e-15));
    CHECK(an::absarea_var_rate(1.0) == Approx(0.75).epsilon(1e-15));
    CHECK(an::absarea_var_rate(2.0) == Approx(0.1875).epsilon(1e-15));
}

TEST_CASE("reset-free absolute-area rate function") {
    const double z = rbmlab::specfun::airy_prime_first_zero();
    CHECK(an::chi_c_free(1.0) == Approx(2 * std::pow(-z, 3) / 27).epsilon(1e-14));
    CHECK(an::chi_c_free(1.0) == Approx(0.0783293).epsilon(1e-6));
    CHECK(an::chi_c_free(2.0) == Approx(an::chi_c_free(1.0) / 4).epsilon(1e-14));
    CHECK(an::chi_c_free(1e6) < 1e-12);
    double prev = an::chi_c_free(0.1);
    for (double c = 0.2; c < 10; c += 0.1) {
        CHECK(an::chi_c_free(c) < prev);
        prev = an::chi_c_free(c);
    }
    CHECK_THROWS_AS(an::chi_c_free(0.0), std::domain_error);
    CHECK(an::scgf_c_free(-1.0) == Approx(std::pow(0.5, 1.0 / 3.0) * z).epsilon(1e-14));
    CHECK_THROWS_AS(an::scgf_c_free(0.0), std::domain_error);
}

TEST_CASE("stationary density") {
    CHECK(an::stationary_density(0.0, 2.0) == Approx(1.0).epsilon(1e-15));
    CHECK(an::stationary_density(-1.0, 0.7) == an::stationary_density(1.0, 0.7));
    for (double r : {0.5, 1.0, 3.0}) {
        const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [r](double x) { return an::stationary_density(x, r); }, -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), 15, 1e-13);
        CHECK(mass == Approx(1.0).epsilon(1e-10));
        CHECK(an::stationary_cdf(0.0, r) == Approx(0.5).epsilon(1e-15));
        const double h = 1e-5;
        for (double x : {-2.0, -0.3, 0.4, 1.5})
            CHECK((an::stationary_cdf(x + h, r) - an::stationary_cdf(x - h, r)) / (2 * h) ==
                  Approx(an::stationary_density(x, r)).epsilon(1e-7));
    }
}
