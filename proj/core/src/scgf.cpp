#include "rbmlab/ldp.hpp"

#include "rbmlab/errors.hpp"
#include "rbmlab/renewal.hpp"
#include "rbmlab/specfun.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <stdexcept>

namespace rbmlab::ldp {

namespace {

// H(z0 + delta) with Ai' expanded around its first zero z0, so that the pole
// is resolved in relative precision for small delta.
class PoleH {
public:
    PoleH() : z0_(specfun::airy_prime_first_zero()) {
        // Ai^{(m)} = z Ai^{(m-2)} + (m-2) Ai^{(m-3)}
        d_[0] = specfun::airy_ai(z0_);
        d_[1] = 0.0;
        d_[2] = z0_ * d_[0];
        for (int m = 3; m < terms; ++m) d_[m] = z0_ * d_[m - 2] + (m - 2) * d_[m - 3];
    }

    double z0() const { return z0_; }

    double operator()(double delta) const {
        if (delta > 0.5) return renewal::airy_h(z0_ + delta);
        double prime = 0.0, pw = 1.0;
        for (int m = 2; m < terms; ++m) {
            pw *= delta / (m - 1);
            prime += d_[m] * pw;
        }
        return -std::cbrt(2.0) * specfun::airy_ai_int(z0_ + delta) / prime;
    }

private:
    static constexpr int terms = 40;
    double z0_;
    double d_[terms];
};

}  // namespace

double scgf_c(double k, double r, double lower_offset) {
    if (!(k < 0.0)) throw std::domain_error("scgf_c: defined for k < 0 only");
    if (!(r > 0.0)) throw std::domain_error("scgf_c: r must be positive");
    static const PoleH h;
    const double q = std::cbrt(k * k);
    const double c2 = std::cbrt(2.0);
    const double target = std::log(q / r);
    auto f = [&](double delta) { return std::log(h(delta)) - target; };

    double lo = lower_offset;
    while (f(lo) < 0.0) {
        lo *= 0.1;
        if (lo < 1e-300) throw bracket_error("scgf_c: no sign change above the first zero of Ai'");
    }
    double hi = std::max(lo + 1.0, 4.0 * c2 * r / q - h.z0());
    for (int i = 0; f(hi) > 0.0; ++i) {
        if (i > 200) throw bracket_error("scgf_c: upper bracket not found");
        hi *= 2.0;
    }
    boost::uintmax_t max_iter = 300;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                          max_iter);
    double d = 0.5 * (a + b);
    if (std::fabs(f(a)) < std::fabs(f(d))) d = a;
    if (std::fabs(f(b)) < std::fabs(f(d))) d = b;
    if (std::fabs(f(d)) > 1e-12) throw convergence_error("scgf_c: residual above 1e-12");
    return q * (h.z0() + d) / c2 - r;
}

}  // namespace rbmlab::ldp
