#pragma once

#include <vector>

#include "twistmeans/core.hpp"
#include "twistmeans/radial.hpp"
#include "twistmeans/structured.hpp"

namespace twistmeans::operators {

/// A  : A_j  = d/dz_j + zbar_j/4      Z  : Z_j  = d/dz_j - zbar_j/4
/// As : A_j* = d/dzbar_j - z_j/4      Zs : Z_j* = d/dzbar_j + z_j/4
/// D, Ds : radial (d/drho - rho/2), (d/drho + rho/2)  (see radial_ladder)
/// Dbar : Euclidean d_{zbar_1} = d/dx_1 + i d/dx_2
enum class Kind { A, As, Z, Zs, D, Ds, Dbar };

struct OperatorSpec {
    Kind kind = Kind::A;
    int j = 0;      // 0-based coordinate index
    int power = 1;  // number of applications
};

/// Exact application on the structured path.
StructuredFunction apply(const OperatorSpec& op, const StructuredFunction& f);
RealStructuredFunction apply(const OperatorSpec& op, const RealStructuredFunction& f);

/// Finite-difference settings for black-box fields: 4th-order central
/// differences at h and h/2, combined by one Richardson step.
struct FiniteDifference {
    double h = 1e-2;  // relative step, scaled by max(1, |coordinate|)
};

/// Black-box application by finite differences (powers compose the
/// differentiated fields, so cost grows like 10^power).
Field apply(const OperatorSpec& op, Field f, FiniteDifference fd = {});
RealField apply(const OperatorSpec& op, RealField f, FiniteDifference fd = {});

/// (A_1*)^p (A_2)^q f   (kind = A), or (Z_1*)^p (Z_2)^q f (kind = Z).
StructuredFunction monomial_weyl(int p, int q, Kind kind, const StructuredFunction& f);
Field monomial_weyl(int p, int q, Kind kind, const Field& f, FiniteDifference fd = {});

/// (1/rho)(d/drho - rho/2) phi_k^{m-1} (kind D) or (1/rho)(d/drho + rho/2)
/// phi_k^{m-1} (kind Ds), from analytic Laguerre derivatives. rho > 0.
double radial_ladder(Kind kind, int k, int m, double rho);

/// (1/rho)(d/drho -/+ rho/2) applied to an exp-power profile, exactly.
RadialProfile radial_ladder(Kind kind, const RadialProfile& a);

/// The composition (1/rho D)^p (1/rho D*)^q applied to phi_k^{m-1}, carried
/// out on the Laguerre coefficient vector: each step maps phi_j^{a} to
/// -phi_j^{a+1} (D) or -phi_{j-1}^{a+1} (D*). Returns coefficients in type
/// m-1+p+q.
std::vector<double> radial_ladder_coefficients(int p, int q, int k);

/// k-fold Euclidean d_{zbar_1}.
RealStructuredFunction euclid_dbar(const RealStructuredFunction& f, int k);
RealField euclid_dbar(const RealField& f, int k, FiniteDifference fd = {});

}  // namespace twistmeans::operators
