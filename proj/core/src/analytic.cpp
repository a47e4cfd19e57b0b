#include "rbmlab/analytic.hpp"

#include "rbmlab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbmlab::analytic {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(what) + " must be positive and finite");
}

// Sum by peak-relative terms for arguments where the direct sum overflows.
double log_scaling_w_large(double x) {
    const double lx = std::log(x);
    const auto j0 = static_cast<long>(std::floor(2.0 * x));
    auto log_term = [&](long j) { return j * lx - 2.0 * std::lgamma(0.5 * (j + 1)); };
    const double ref = log_term(j0);
    double s = 0.0;
    for (long start : {j0, j0 + 1}) {
        double t = std::exp(log_term(start) - ref);
        s += t;
        double u = t;
        for (long j = start; j >= 2; j -= 2) {
            const double h = 0.5 * (j - 1);
            u *= h * h / (x * x);
            s += u;
            if (u < 1e-18 * s) break;
        }
        u = t;
        for (long j = start;; j += 2) {
            const double h = 0.5 * (j + 1);
            u *= x * x / (h * h);
            s += u;
            if (u < 1e-18 * s) break;
        }
    }
    return ref + std::log(s) - lx;
}

}  // namespace

double scaling_w(double x) {
    require_positive(x, "scaling_w: x");
    if (x > 300.0) return std::exp(log_scaling_w_large(x));
    const double x2 = x * x;
    double even = 1.0 / pi;  // j = 0
    double odd = x;          // j = 1
    double sum = even + odd;
    for (long j = 0;; j += 2) {
        const double he = 0.5 * (j + 1), ho = 0.5 * (j + 2);
        even *= x2 / (he * he);
        odd *= x2 / (ho * ho);
        sum += even + odd;
        if (j > 2.0 * x && even + odd < 1e-16 * sum) break;
    }
    return sum / x;
}

double log_scaling_w(double x) {
    require_positive(x, "log_scaling_w: x");
    return x > 300.0 ? log_scaling_w_large(x) : std::log(scaling_w(x));
}

double scaling_w_dual(double x) {
    require_positive(x, "scaling_w_dual: x");
    return specfun::bessel_i0(2.0 * x) + specfun::hyp1f2(1.0, 0.5, 0.5, x * x) / (pi * x);
}

double occupation_density(double a, double T, double r) {
    require_positive(T, "occupation_density: T");
    require_positive(r, "occupation_density: r (use occupation_density_free for r = 0)");
    if (!(a > 0.0 && a < T))
        throw std::domain_error("occupation_density: a must lie in (0, T)");
    const double x = r * std::sqrt(a * (T - a));
    if (x < 1e-8) return r * std::exp(-r * T) * (1.0 / (pi * x) + 1.0);
    return std::exp(std::log(r) - r * T + log_scaling_w(x));
}

double occupation_density_free(double a, double T) {
    require_positive(T, "occupation_density_free: T");
    if (!(a > 0.0 && a < T))
        throw std::domain_error("occupation_density_free: a must lie in (0, T)");
    return 1.0 / (pi * std::sqrt(a * (T - a)));
}

AsymptoticDensity occupation_density_asymptotic(double a_frac, double T, double r) {
    require_positive(T, "occupation_density_asymptotic: T");
    require_positive(r, "occupation_density_asymptotic: r");
    if (!(a_frac > 0.0 && a_frac < 1.0))
        throw std::domain_error("occupation_density_asymptotic: a_frac must lie in (0, 1)");
    const double q = a_frac * (1.0 - a_frac);
    const double v = std::sqrt(r) * std::exp(-r * T * (1.0 - 2.0 * std::sqrt(q))) /
                     (std::sqrt(pi * T) * std::pow(q, 0.25));
    return {v, r * T < 10.0};
}

ExtendedReal chi_a(double a, double r) {
    if (!(a >= 0.0 && a <= 1.0)) return ExtendedReal::infinity();
    return r * (1.0 - 2.0 * std::sqrt(a * (1.0 - a)));
}

double scgf_a(double k, double r) {
    const double root = std::sqrt(k * k + 4.0 * r * r);
    // k + root without cancellation for k < 0
    const double s = k >= 0.0 ? k + root : 4.0 * r * r / (root - k);
    return 0.5 * s - r;
}

double scgf_a_prime(double k, double r) {
    return 0.5 * (1.0 + k / std::sqrt(k * k + 4.0 * r * r));
}

double area_second_moment(double T, double r) {
    require_positive(T, "area_second_moment: T");
    require_positive(r, "area_second_moment: r");
    const double rho = r * T;
    if (rho < 0.5) {
        // 2 T^3 sum_{n>=3} (-1)^{n+1} (n-2) rho^{n-3} / n!
        double sum = 0.0, pw = 1.0, fact = 6.0;
        for (int n = 3; n < 40; ++n) {
            const double term = ((n % 2) ? 1.0 : -1.0) * (n - 2) * pw / fact;
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
            pw *= rho;
            fact *= n + 1;
        }
        return 2.0 * T * T * T * sum;
    }
    return 2.0 / (r * r * r) * (rho - 2.0 + std::exp(-rho) * (2.0 + rho));
}

double area_fourth_moment(double T, double r) {
    require_positive(T, "area_fourth_moment: T");
    require_positive(r, "area_fourth_moment: r");
    const double rho = r * T;
    if (rho < 2.0) {
        // T^6 sum_{n>=6} c_n rho^{n-6},
        // c_n = sum_{m=0}^{4} q_m (-1)^{n-m} / (n-m)!
        static const long double q[5] = {840.0L, 720.0L, 288.0L, 68.0L, 9.0L};
        long double sum = 0.0L, pw = 1.0L;
        for (int n = 6; n < 80; ++n) {
            long double c = 0.0L;
            for (int m = 0; m <= 4; ++m) {
                long double f = 1.0L;
                for (int i = 2; i <= n - m; ++i) f *= i;
                c += (((n - m) % 2) ? -q[m] : q[m]) / f;
            }
            const long double term = c * pw;
            sum += term;
            if (n > 12 && std::fabs(term) < 1e-20L * std::fabs(sum)) break;
            pw *= rho;
        }
        const double T3 = T * T * T;
        return static_cast<double>(sum) * T3 * T3;
    }
    const double r3 = r * r * r;
    const double poly = 12.0 * rho * rho + 120.0 * rho - 840.0;
    const double epoly = (((9.0 * rho + 68.0) * rho + 288.0) * rho + 720.0) * rho + 840.0;
    return (poly + std::exp(-rho) * epoly) / (r3 * r3);
}

double area_crossover_time(double r) {
    require_positive(r, "area_crossover_time: r");
    return std::sqrt(6.0) / r;
}

double clt_variance(double r) {
    require_positive(r, "clt_variance: r");
    return 2.0 / (r * r);
}

double absarea_f1(double rho) {
    require_positive(rho, "absarea_f1: rho");
    const double c = 1.0 / std::sqrt(2.0 * pi);
    if (rho < 0.5) {
        // sum_j (-1)^j 4 rho^j / (j! (2j+1)(2j+3))
        double sum = 0.0, pw = 1.0, fact = 1.0;
        for (int j = 0; j < 40; ++j) {
            const double term = ((j % 2) ? -4.0 : 4.0) * pw / (fact * (2 * j + 1) * (2 * j + 3));
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
            pw *= rho;
            fact *= j + 1;
        }
        return c * sum;
    }
    const double sr = std::sqrt(rho);
    return c * (std::exp(-rho) / rho +
                std::sqrt(pi) / (2.0 * rho * sr) * (2.0 * rho - 1.0) * specfun::erf(sr));
}

double absarea_f3(double rho) {
    require_positive(rho, "absarea_f3: rho");
    if (rho < 0.5) {
        // (1/4) sum_{n>=3} (-1)^n (6 - 5n) rho^{n-3} / n!
        double sum = 0.0, pw = 1.0, fact = 6.0;
        for (int n = 3; n < 40; ++n) {
            const double term = ((n % 2) ? -1.0 : 1.0) * (6.0 - 5.0 * n) * pw / fact;
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
            pw *= rho;
            fact *= n + 1;
        }
        return 0.25 * sum;
    }
    return (2.0 * rho * rho + rho - 6.0 + (5.0 * rho + 6.0) * std::exp(-rho)) /
           (4.0 * rho * rho * rho);
}

double absarea_f2(double rho) {
    const double f1 = absarea_f1(rho);
    return absarea_f3(rho) - f1 * f1;
}

double absarea_mean(double T, double r) {
    require_positive(T, "absarea_mean: T");
    return T * std::sqrt(T) * absarea_f1(r * T);
}

double absarea_variance(double T, double r) {
    require_positive(T, "absarea_variance: T");
    return T * T * T * absarea_f2(r * T);
}

double absarea_second_moment(double T, double r) {
    require_positive(T, "absarea_second_moment: T");
    return T * T * T * absarea_f3(r * T);
}

double absarea_mean_rate(double r) {
    require_positive(r, "absarea_mean_rate: r");
    return 1.0 / std::sqrt(2.0 * r);
}

double absarea_var_rate(double r) {
    require_positive(r, "absarea_var_rate: r");
    return 3.0 / (4.0 * r * r);
}

double chi_c_free(double c) {
    require_positive(c, "chi_c_free: c");
    const double z = std::fabs(specfun::airy_prime_first_zero());
    return 2.0 * z * z * z / (27.0 * c * c);
}

double scgf_c_free(double k) {
    if (!(k < 0.0)) throw std::domain_error("scgf_c_free: defined for k < 0 only");
    return std::cbrt(0.5) * std::cbrt(k * k) * specfun::airy_prime_first_zero();
}

double stationary_density(double x, double r) {
    require_positive(r, "stationary_density: r");
    return std::sqrt(0.5 * r) * std::exp(-std::sqrt(2.0 * r) * std::fabs(x));
}

double stationary_cdf(double x, double r) {
    require_positive(r, "stationary_cdf: r");
    const double e = 0.5 * std::exp(-std::sqrt(2.0 * r) * std::fabs(x));
    return x < 0.0 ? e : 1.0 - e;
}

}  // namespace rbmlab::analytic
