#pragma once

#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "twistmeans/core.hpp"
#include "twistmeans/polynomial.hpp"
#include "twistmeans/sphere.hpp"

namespace twistmeans::harmonics {

/// A bigraded solid harmonic: a ComplexPoly that is bihomogeneous of
/// bidegree (p, q) and annihilated by the Laplacian.
using HarmonicPoly = ComplexPoly;

/// Orthonormal basis of H_{p,q} in L^2(S^{2n-1}, dmu_1).
///
/// Construction: the kernel of the Laplacian on the monomials of P_{p,q} is
/// computed in exact rational arithmetic; the kernel vectors (preceded by
/// z_1^p zbar_2^q when n >= 2) are then orthonormalized with exact sphere
/// moments. The basis spans H_{p,q} but may differ from any other
/// orthonormal basis by a unitary mixing.
struct HarmonicBasis {
    int n = 1;
    int p = 0;
    int q = 0;
    std::vector<HarmonicPoly> elements;
    std::size_t size() const { return elements.size(); }
};

/// Orthonormal basis of the solid harmonics H_k on R^d; its first element
/// is a multiple of (x_1 + i x_2)^k.
struct RealHarmonicBasis {
    int dim = 2;
    int k = 0;
    std::vector<RealPoly> elements;
    std::size_t size() const { return elements.size(); }
};

/// Delta = 4 sum_i d^2/dz_i dzbar_i, exact on coefficients.
ComplexPoly laplacian(const ComplexPoly& poly);
/// Delta = sum_i d^2/dx_i^2.
RealPoly laplacian(const RealPoly& poly);

HarmonicBasis build_bigraded_basis(int n, int p, int q);
RealHarmonicBasis build_real_basis(int dim, int k);

/// Dimension of the exact kernel of Delta on P_{p,q}(C^n).
int bigraded_dimension(int n, int p, int q);

/// <P, Q> = int_{S^{2n-1}} P conj(Q) dmu from closed-form moments.
Complex sphere_inner(const ComplexPoly& a, const ComplexPoly& b);
Complex sphere_inner(const RealPoly& a, const RealPoly& b);

/// P(U^{-1} z) expanded in monomials. Throws std::invalid_argument when U is
/// not unitary to 1e-12.
ComplexPoly unitary_action(const ComplexPoly& poly, const Eigen::MatrixXcd& u);

/// Spherical harmonic coefficients of f on a radial grid:
///   a_j(rho) = int f(rho w) conj(Y_j(w)) dmu(w),  Y_j = P_j restricted to S^{2n-1},
///   a_tilde_j(rho) = rho^{-(p+q)} a_j(rho).
struct HarmonicCoefficients {
    std::vector<double> rho;
    std::vector<std::vector<Complex>> a;        // a[j][i] at rho[i]
    std::vector<std::vector<Complex>> a_tilde;  // same layout
};

/// Throws std::invalid_argument if rho = 0 is in the grid and p + q > 0.
HarmonicCoefficients harmonic_coefficients(const Field& f, const HarmonicBasis& basis,
                                           const std::vector<double>& rho_grid, const sphere::SphereRule& unit_rule);

nlohmann::json to_json(const ComplexPoly& poly);
nlohmann::json to_json(const HarmonicBasis& basis);
nlohmann::json to_json(const RealHarmonicBasis& basis);

}  // namespace twistmeans::harmonics
