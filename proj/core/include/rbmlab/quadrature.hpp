#pragma once

#include <functional>
#include <vector>

namespace rbmlab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Laguerre rule for weight e^{-x} on [0, inf); weights sum to 1.
QuadratureRule gauss_laguerre(int n);

// Adaptive Gauss-Kronrod on [a, b] (b may be +inf). Throws
// convergence_error when the error estimate misses both tolerances.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-13, double rel_tol = 1e-12);

}  // namespace rbmlab
