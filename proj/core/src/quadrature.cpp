#include "rbmlab/quadrature.hpp"

#include "rbmlab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rbmlab {

QuadratureRule gauss_laguerre(int n) {
    if (n < 1 || n > 400)
        throw std::domain_error("gauss_laguerre: node count must be in [1, 400]");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    long double z = 0.0L;
    for (int i = 0; i < n; ++i) {
        // initial guesses from the usual asymptotic spacing of Laguerre zeros
        if (i == 0)
            z = 3.0L / (1.0L + 2.4L * n);
        else if (i == 1)
            z += 15.0L / (1.0L + 2.5L * n);
        else {
            const long double ai = i - 1;
            z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - rule.nodes[i - 2]);
        }
        long double p1 = 0.0L, p2 = 0.0L, pp = 0.0L;
        int it = 0;
        for (; it < 200; ++it) {
            p1 = 1.0L;
            p2 = 0.0L;
            for (int j = 1; j <= n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
            }
            pp = n * (p1 - p2) / z;
            const long double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) <= 1e-17L * std::fabs(z))
                break;
        }
        if (it == 200)
            throw convergence_error("gauss_laguerre: Newton iteration did not converge");
        rule.nodes[i] = static_cast<double>(z);
        rule.weights[i] = static_cast<double>(-1.0L / (pp * n * p2));
    }
    return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
    if (a == b)
        return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double l1 = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &err, &l1);
    if (!std::isfinite(v))
        throw convergence_error("integrate: non-finite result");
    if (err > abs_tol && err > rel_tol * l1)
        throw convergence_error("integrate: tolerance not reached");
    return v;
}

}  // namespace rbmlab
