#pragma once

#include <span>
#include <vector>

#include "twistmeans/core.hpp"

namespace twistmeans::quadrature {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2m-1.
Rule1D gauss_legendre(int m, double a = -1.0, double b = 1.0);

/// m-point generalized Gauss-Laguerre rule for the weight t^alpha e^{-t} on
/// [0, inf). Nodes are the zeros of L_m^alpha.
Rule1D gauss_laguerre(int m, double alpha);

/// Composite Gauss-Legendre: `panels` equal panels on [a, b], m points each.
Rule1D composite_gauss_legendre(int panels, int m, double a, double b);

/// Pairwise (cascade) summation; the result depends only on the input
/// order, never on how the values were produced.
Complex pairwise_sum(std::span<const Complex> values);
double pairwise_sum(std::span<const double> values);

}  // namespace twistmeans::quadrature
