#pragma once

namespace rbmlab::specfun {

struct EvalResult {
    double value = 0.0;
    double est_abs_error = 0.0;
    int terms_used = 0;
};

inline constexpr int hyp1f2_term_cap = 100000;

// Gamma function for x > 0. Throws std::domain_error for x <= 0.
double gamma(double x);

// Error function; odd by construction, saturates to +-1 beyond |x| = 6.
double erf(double x);

// Modified Bessel function I0 for x >= 0: ascending series up to x = 15,
// asymptotic expansion beyond.
double bessel_i0(double x);
EvalResult bessel_i0_eval(double x);

// 1F2(a; b1, b2; x) by its term-ratio series. Throws convergence_error when
// the term cap is hit and std::domain_error for nonpositive integer b1, b2.
double hyp1f2(double a, double b1, double b2, double x);
EvalResult hyp1f2_eval(double a, double b1, double b2, double x);

// Airy Ai and Ai' for x >= -5 (std::domain_error below). Maclaurin series
// for |x| <= 8, asymptotic expansion for x > 8.
double airy_ai(double x);
double airy_ai_prime(double x);
EvalResult airy_ai_eval(double x);
EvalResult airy_ai_prime_eval(double x);

// Integral Airy function AI(x) = int_x^inf Ai(t) dt for x >= -5: 1/3 minus
// the quadrature of Ai over [0, x] below x = 2, the Macdonald-function tail
// integral above, 0 from x = 40 on.
double airy_ai_int(double x);
EvalResult airy_ai_int_eval(double x);

// First (largest) zero of Ai', about -1.0187929716.
double airy_prime_first_zero();

// AI(x) / Ai'(x) for x > first zero of Ai', accurate in the relative sense
// also where both factors underflow.
double airy_int_over_prime(double x);

// Individual branches, exposed for overlap checks at the switch points.
namespace detail {
EvalResult bessel_i0_series(double x);
EvalResult bessel_i0_asymptotic(double x);
EvalResult airy_ai_series(double x);
EvalResult airy_ai_asymptotic(double x);
EvalResult airy_ai_prime_series(double x);
EvalResult airy_ai_prime_asymptotic(double x);
}  // namespace detail

}  // namespace rbmlab::specfun
