#include "rbmlab/renewal.hpp"

#include "rbmlab/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace rbmlab::renewal {

namespace {

std::vector<long double> stehfest_weights(int order) {
    const int half = order / 2;
    auto fact = [](int n) {
        long double f = 1.0L;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    std::vector<long double> v(order + 1, 0.0L);
    for (int i = 1; i <= order; ++i) {
        long double s = 0.0L;
        for (int k = (i + 1) / 2; k <= std::min(i, half); ++k) {
            s += std::pow(static_cast<long double>(k), half) * fact(2 * k) /
                 (fact(half - k) * fact(k) * fact(k - 1) * fact(i - k) * fact(2 * k - i));
        }
        v[i] = ((i + half) % 2 ? -1.0L : 1.0L) * s;
    }
    return v;
}

}  // namespace

double gaver_stehfest(const std::function<double(double)>& F, double T, int order) {
    if (!(T > 0.0)) throw std::domain_error("gaver_stehfest: T must be positive");
    if (order < 2 || order % 2 || order > 20)
        throw std::domain_error("gaver_stehfest: order must be even and in [2, 20]");
    const auto v = stehfest_weights(order);
    const long double a = std::numbers::ln2_v<long double> / T;
    long double sum = 0.0L;
    for (int i = 1; i <= order; ++i) sum += v[i] * F(static_cast<double>(i * a));
    return static_cast<double>(a * sum);
}

double talbot(const std::function<cplx(cplx)>& F, double T, int points) {
    if (!(T > 0.0)) throw std::domain_error("talbot: T must be positive");
    if (points < 4) throw std::domain_error("talbot: need at least 4 points");
    const double M = points;
    const double r = 2.0 * M / (5.0 * T);
    double sum = 0.5 * std::exp(r * T) * F(cplx(r, 0.0)).real();
    for (int k = 1; k < points; ++k) {
        const double th = k * std::numbers::pi / M;
        const double cot = std::cos(th) / std::sin(th);
        const cplx s = r * th * cplx(cot, 1.0);
        const double sigma = th + (th * cot - 1.0) * cot;
        sum += (std::exp(T * s) * F(s) * cplx(1.0, sigma)).real();
    }
    return r / M * sum;
}

double inverse_laplace(const LaplaceFunction& F, double T, InversionMethod method) {
    if (method == InversionMethod::talbot) {
        if (!F.complex) throw std::invalid_argument("inverse_laplace: talbot needs a complex evaluation");
        return talbot(F.complex, T, talbot_points);
    }
    if (!F.real) throw std::invalid_argument("inverse_laplace: missing real evaluation");
    const double hi = gaver_stehfest(F.real, T, gaver_stehfest_order);
    const double lo = gaver_stehfest(F.real, T, gaver_stehfest_order - 2);
    if (std::fabs(hi - lo) > 1e-4 * std::fabs(hi))
        throw convergence_error("inverse_laplace: Gaver-Stehfest orders disagree (oscillation)");
    return hi;
}

}  // namespace rbmlab::renewal
