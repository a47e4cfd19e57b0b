#pragma once

#include "rbmlab/extended_real.hpp"

namespace rbmlab::analytic {

// W(x) = (1/x) sum_j x^j / Gamma((j+1)/2)^2, x > 0.
double scaling_w(double x);
double log_scaling_w(double x);
// I0(2x) + 1F2(1; 1/2, 1/2; x^2) / (pi x)
double scaling_w_dual(double x);

// Density of the occupation time A_T of [0, inf) for r > 0, on 0 < a < T.
double occupation_density(double a, double T, double r);
// Arcsine law (r = 0), 0 < a < T.
double occupation_density_free(double a, double T);

struct AsymptoticDensity {
    double value;
    bool below_validity;  // rT < 10
};
// Large-T form of occupation_density(a_frac * T, T, r):
// sqrt(r) e^{-rT(1 - 2 sqrt(q))} / (sqrt(pi T) q^{1/4}), q = a_frac (1 - a_frac).
AsymptoticDensity occupation_density_asymptotic(double a_frac, double T, double r);

ExtendedReal chi_a(double a, double r);
double scgf_a(double k, double r);
double scgf_a_prime(double k, double r);

double area_second_moment(double T, double r);
double area_fourth_moment(double T, double r);
double area_crossover_time(double r);
double clt_variance(double r);

// Closed-form scaling functions of the absolute-area moments in rho = rT.
double absarea_f1(double rho);
double absarea_f2(double rho);
double absarea_f3(double rho);
double absarea_mean(double T, double r);
double absarea_variance(double T, double r);
double absarea_second_moment(double T, double r);
double absarea_mean_rate(double r);
double absarea_var_rate(double r);

// Reset-free moments of the absolute area of a unit-time Brownian path.
inline constexpr double absarea_free_mean = 0.53192304053524357;  // 4/(3 sqrt(2 pi))
inline constexpr double absarea_free_second = 0.375;

double chi_c_free(double c);
// Large-deviation exponent of the reset-free SCGF power law,
// lambda_0(k) = 2^{-1/3} (-k)^{2/3} zeta'_0 for k < 0.
double scgf_c_free(double k);

double stationary_density(double x, double r);
double stationary_cdf(double x, double r);

}  // namespace rbmlab::analytic
