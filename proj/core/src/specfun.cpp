#include "rbmlab/specfun.hpp"

#include "rbmlab/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rbmlab::specfun {

double gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma: argument must be positive, got " + std::to_string(x));
    return std::tgamma(x);
}

double erf(double x) {
    const double ax = std::fabs(x);
    const double v = ax > 6.0 ? 1.0 : std::erf(ax);
    return std::signbit(x) ? -v : v;
}

namespace {

EvalResult i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    int m = 0;
    while (term > 1e-17 * sum) {
        ++m;
        term *= q / (static_cast<double>(m) * m);
        sum += term;
    }
    return {sum, term + 1e-16 * sum, m + 1};
}

EvalResult i0_asymptotic(double x) {
    // sum_k ((2k-1)!!)^2 / (k! (8x)^k); stop at the smallest term
    double term = 1.0;
    double sum = 1.0;
    int k = 0;
    while (true) {
        const double next = term * (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1) * x);
        if (next >= term || next < 1e-17 * sum) {
            term = next;
            break;
        }
        term = next;
        sum += term;
        ++k;
    }
    const double pref = std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x);
    return {pref * sum, pref * (std::fabs(term) + 1e-16 * sum), k + 1};
}

}  // namespace

EvalResult bessel_i0_eval(double x) {
    if (!(x >= 0.0))
        throw std::domain_error("bessel_i0: argument must be nonnegative");
    return x <= 15.0 ? i0_series(x) : i0_asymptotic(x);
}

double bessel_i0(double x) { return bessel_i0_eval(x).value; }

namespace detail {
EvalResult bessel_i0_series(double x) { return i0_series(x); }
EvalResult bessel_i0_asymptotic(double x) { return i0_asymptotic(x); }
}  // namespace detail

namespace {

bool nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

}  // namespace

EvalResult hyp1f2_eval(double a, double b1, double b2, double x) {
    if (nonpositive_integer(b1) || nonpositive_integer(b2))
        throw std::domain_error("hyp1f2: lower parameters must not be nonpositive integers");
    double term = 1.0;
    double sum = 1.0;
    for (int m = 0; m < hyp1f2_term_cap; ++m) {
        term *= (a + m) * x / ((b1 + m) * (b2 + m) * (m + 1.0));
        sum += term;
        if (std::fabs(term) < 1e-16 * std::fabs(sum))
            return {sum, std::fabs(term), m + 2};
        if (term == 0.0)
            return {sum, 0.0, m + 2};
    }
    throw convergence_error("hyp1f2: term cap reached");
}

double hyp1f2(double a, double b1, double b2, double x) {
    return hyp1f2_eval(a, b1, b2, x).value;
}

}  // namespace rbmlab::specfun
