#include "twistmeans/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "twistmeans/core.hpp"

namespace twistmeans::special {

namespace {

constexpr double kBesselSwitch = 12.0;

// Zeros of L_k^alpha never exceed 4k + 2alpha + 2 for alpha > -1.
double laguerre_zero_upper_bound(int k, double alpha) { return 4.0 * k + 2.0 * std::max(alpha, 0.0) + 6.0; }

double refine_laguerre_root(const LaguerreSpec& spec, double lo, double hi, const Tolerances& tol) {
    double flo = laguerre_eval(spec, lo);
    double fhi = laguerre_eval(spec, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) {
        throw NumericalError("laguerre_zeros: bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                             "] lost its root for k=" + std::to_string(spec.k));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 0.25 * tol.zero_rel_tol * std::abs(mid)) break;
        const double fm = laguerre_eval(spec, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    const double d = laguerre_deriv(spec, x);
    if (d != 0.0) {
        const double polished = x - laguerre_eval(spec, x) / d;
        if (polished > lo && polished < hi) x = polished;
    }
    return x;
}

double hankel_normalized(double nu, double x) {
    // Gamma(nu+1) (2/x)^nu J_nu(x) from the Hankel expansion.
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::abs(term);
        if (mag > prev && k > nu + 1) break;
        prev = mag;
        // term_k enters P (even k) or Q (odd k) with sign (-1)^{floor(k/2)}
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p += sign * term;
        else
            q += sign * term;
        if (mag < 1e-17) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * kPi;
    const double j = std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
    return std::exp(std::lgamma(nu + 1.0) + nu * std::log(2.0 / x)) * j;
}

double series_normalized(double nu, double x) {
    const double y = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 300; ++m) {
        term *= y / (m * (nu + m));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double laguerre_eval(const LaguerreSpec& spec, double x) {
    if (spec.k < 0) return 0.0;
    double prev = 1.0;
    if (spec.k == 0) return prev;
    double cur = 1.0 + spec.alpha - x;
    for (int j = 1; j < spec.k; ++j) {
        const double next = ((2.0 * j + 1.0 + spec.alpha - x) * cur - (j + spec.alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double binomial(double n, int k) {
    if (k < 0) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= (n - k + j) / j;
    return r;
}

double laguerre_eval_sum(const LaguerreSpec& spec, double x) {
    double sum = 0.0;
    double xpow = 1.0;
    double fact = 1.0;
    for (int i = 0; i <= spec.k; ++i) {
        if (i > 0) {
            xpow *= x;
            fact *= i;
        }
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binomial(spec.alpha + spec.k, spec.k - i) * xpow / fact;
    }
    return sum;
}

double laguerre_deriv(const LaguerreSpec& spec, double x) {
    if (spec.k <= 0) return 0.0;
    return -laguerre_eval({spec.k - 1, spec.alpha + 1.0}, x);
}

std::vector<double> laguerre_zeros(const LaguerreSpec& spec, const Tolerances& tol) {
    if (spec.k < 1) throw std::invalid_argument("laguerre_zeros: degree must be >= 1");
    if (!(spec.alpha > -1.0)) throw std::invalid_argument("laguerre_zeros: type must exceed -1");

    std::vector<double> zeros{spec.alpha + 1.0};
    for (int k = 2; k <= spec.k; ++k) {
        const LaguerreSpec cur{k, spec.alpha};
        std::vector<double> next;
        next.reserve(k);
        double lo = 0.0;
        for (int i = 0; i <= static_cast<int>(zeros.size()); ++i) {
            const double hi = (i < static_cast<int>(zeros.size())) ? zeros[i] : laguerre_zero_upper_bound(k, spec.alpha);
            next.push_back(refine_laguerre_root(cur, lo, hi, tol));
            lo = hi;
        }
        zeros = std::move(next);
    }
    for (std::size_t i = 1; i < zeros.size(); ++i) {
        if (!(zeros[i] - zeros[i - 1] > 4.0 * tol.zero_rel_tol * zeros[i])) {
            throw NumericalError("laguerre_zeros: zeros " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                 " are not separated");
        }
    }
    return zeros;
}

double phi_eval(const LaguerreFunctionSpec& spec, double rho) {
    const double t = 0.5 * rho * rho;
    return laguerre_eval({spec.k, spec.dim - 1.0}, t) * std::exp(-0.5 * t);
}

double bessel_normalized(double nu, double x) {
    if (x < 0.0) x = -x;
    if (x < kBesselSwitch) return series_normalized(nu, x);
    return hankel_normalized(nu, x);
}

double bessel_j(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double scale = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
    return scale * bessel_normalized(nu, x);
}

double bessel_j_zero(double nu, int s) {
    if (s < 1) throw std::invalid_argument("bessel_j_zero: index must be >= 1");
    const double step = 0.125;
    double lo = 1e-3;
    double flo = bessel_j(nu, lo);
    int found = 0;
    for (double hi = lo + step; hi < 1e4; hi += step) {
        const double fhi = bessel_j(nu, hi);
        if ((flo > 0) != (fhi > 0)) {
            if (++found == s) {
                double a = lo;
                double b = hi;
                double fa = flo;
                for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = bessel_j(nu, m);
                    if ((fm > 0) == (fa > 0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                return 0.5 * (a + b);
            }
        }
        lo = hi;
        flo = fhi;
    }
    throw NumericalError("bessel_j_zero: zero not found");
}

double bessel_phi_eval(const BesselRadialSpec& spec, double r) {
    return bessel_normalized(0.5 * spec.dim - 1.0, spec.lambda * r);
}

double bessel_phi_deriv(const BesselRadialSpec& spec, double r) {
    const double nu = 0.5 * spec.dim - 1.0;
    const double x = spec.lambda * r;
    return -spec.lambda * x / (2.0 * (nu + 1.0)) * bessel_normalized(nu + 1.0, x);
}

Rational b_constant(int k, int n) {
    if (k < 0 || n < 1) throw std::invalid_argument("b_constant: need k >= 0, n >= 1");
    // k!(n-1)!/(n+k-1)! = 1 / binom(n+k-1, k)
    Rational binom(1);
    for (int j = 1; j <= k; ++j) binom = binom * Rational(n - 1 + j, j);
    return Rational(1) / binom;
}

}  // namespace twistmeans::special
