#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace rbmlab::renewal {

using cplx = std::complex<double>;

// Laplace-transformed generating function G(k, s) with its domain.
struct LaplaceGF {
    std::function<double(double k, double s)> eval;
    std::function<bool(double k, double s)> valid;

    std::optional<double> operator()(double k, double s) const {
        if (!valid(k, s)) return std::nullopt;
        return eval(k, s);
    }
};

// Truncated series sum_n coeff[n](s) k^n. Coefficients accept complex s
// so that they can be inverted on a Talbot contour.
struct PowerSeriesLT {
    int order = 0;
    std::vector<std::function<cplx(cplx)>> coeff;
    double s_min = 0.0;

    double operator()(int n, double s) const { return coeff.at(n)(cplx(s, 0.0)).real(); }
    cplx operator()(int n, cplx s) const { return coeff.at(n)(s); }
};

// 1 / sqrt(s (s - k)), valid for s > max(k, 0).
LaplaceGF free_gf_occupation();
// (-k)^{-2/3} H(2^{1/3} s / (-k)^{2/3}), H(x) = -2^{1/3} AI(x) / Ai'(x), k < 0.
LaplaceGF free_gf_absarea();

// H(x) for x above the first zero of Ai'.
double airy_h(double x);

inline constexpr int area_series_cap = 12;
inline constexpr int occupation_series_cap = 40;
inline constexpr int absarea_series_cap = 2;

// Series of the reset-free transforms: coefficient n is the Laplace
// transform of E_0[F_T^n] / n!.
PowerSeriesLT free_series_occupation(int order);
PowerSeriesLT free_series_area(int order);
PowerSeriesLT free_series_absarea(int order);

// G_r(k, s) = G_0(k, r + s) / (1 - r G_0(k, r + s)).
LaplaceGF renewal_map(const LaplaceGF& g0, double r);
PowerSeriesLT renewal_series(const PowerSeriesLT& g0, double r, int order);

enum class InversionMethod { gaver_stehfest, talbot };

struct LaplaceFunction {
    std::function<double(double)> real;
    std::function<cplx(cplx)> complex;  // required for talbot
};

inline constexpr int gaver_stehfest_order = 16;
inline constexpr int talbot_points = 32;

// Numerical inverse Laplace transform at T > 0. Gaver-Stehfest compares
// orders 14 and 16 and throws convergence_error when they disagree by more
// than 1e-4 relative.
double inverse_laplace(const LaplaceFunction& F, double T, InversionMethod method);
double gaver_stehfest(const std::function<double(double)>& F, double T, int order);
double talbot(const std::function<cplx(cplx)>& F, double T, int points);

enum class MomentFunctional { occupation, area, absarea };

// Raw moments E_r[F_T^n], n = 1..max_order, by inverting the renewal series
// on the Talbot contour.
std::vector<double> moments_via_renewal(MomentFunctional functional, double r, double T,
                                        int max_order);

}  // namespace rbmlab::renewal
