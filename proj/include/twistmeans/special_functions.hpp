#pragma once

#include <vector>

#include "twistmeans/rational.hpp"

namespace twistmeans::special {

/// Tolerances used by the root finders. Overridable per call.
struct Tolerances {
    double zero_rel_tol = 1e-12;
    double zero_residual = 1e-10;
};

/// Laguerre polynomial L_k^alpha of degree k and real type alpha.
struct LaguerreSpec {
    int k = 0;
    double alpha = 0.0;
};

/// Laguerre function phi_k^{dim-1}(rho) = L_k^{dim-1}(rho^2/2) e^{-rho^2/4}
/// on C^dim.
struct LaguerreFunctionSpec {
    int k = 0;
    int dim = 1;
};

/// Normalized radial Bessel eigenfunction on R^dim, equal to 1 at the origin.
struct BesselRadialSpec {
    double lambda = 1.0;
    int dim = 2;
};

/// L_k^alpha(x) by the three-term recurrence in the degree.
double laguerre_eval(const LaguerreSpec& spec, double x);

/// Explicit alternating binomial sum. Kept as a cross-check for small k;
/// suffers cancellation for large k and large x.
double laguerre_eval_sum(const LaguerreSpec& spec, double x);

/// d/dx L_k^alpha(x) = -L_{k-1}^{alpha+1}(x), zero for k = 0.
double laguerre_deriv(const LaguerreSpec& spec, double x);

/// The k zeros of L_k^alpha in increasing order. Brackets come from the
/// interlacing with the zeros of L_{k-1}^alpha; each is bisected and then
/// polished by one Newton step. Throws NumericalError if a bracket fails to
/// change sign or two zeros are not strictly separated.
std::vector<double> laguerre_zeros(const LaguerreSpec& spec, const Tolerances& tol = {});

double phi_eval(const LaguerreFunctionSpec& spec, double rho);

/// Bessel function of the first kind J_nu(x), nu >= 0, x >= 0.
/// Ascending series below x = 12, Hankel asymptotic expansion above.
double bessel_j(double nu, double x);

/// Gamma(nu+1) (2/x)^nu J_nu(x), the entire function equal to 1 at x = 0.
double bessel_normalized(double nu, double x);

/// s-th positive zero of J_nu (s >= 1).
double bessel_j_zero(double nu, int s);

/// c_n (lambda r)^{1-n/2} J_{n/2-1}(lambda r) with c_n fixed by value 1 at r = 0.
double bessel_phi_eval(const BesselRadialSpec& spec, double r);

/// d/dr of bessel_phi_eval.
double bessel_phi_deriv(const BesselRadialSpec& spec, double r);

/// B_k^n = k!(n-1)!/(n+k-1)!, exactly.
Rational b_constant(int k, int n);

/// binom(n, k) as a double (exact for the sizes used here).
double binomial(double n, int k);

}  // namespace twistmeans::special
