#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "twistmeans/core.hpp"
#include "twistmeans/polynomial.hpp"
#include "twistmeans/quadrature.hpp"
#include "twistmeans/radial.hpp"
#include "twistmeans/sphere.hpp"

namespace twistmeans::means {

/// left:  f x mu_r (z)  = int f(z - w) e^{+(i lambda/2) Im(z.wbar)} [P(w)] dmu_r(w)
/// right: mu_r x f (z)  = int f(z - w) e^{-(i lambda/2) Im(z.wbar)} [P(w)] dmu_r(w)
enum class Side { Left, Right };

struct MeanQuery {
    ComplexPoint center;
    double radius = 1.0;
    double lambda = 1.0;
    Side side = Side::Left;
    const ComplexPoly* weight = nullptr;  // optional, evaluated at w on S_r
};

/// A sphere average with the absolute mass int |integrand| dmu, the natural
/// scale for residuals of cancelling integrals.
struct MeanValue {
    Complex value;
    double mass = 0.0;
    double relative_to(Complex expected) const {
        return std::abs(value - expected) / std::max(mass, std::abs(expected) + 1e-300);
    }
};

/// Unit sphere rules, built once per (real_dim, order) and shared.
const sphere::SphereRule& unit_rule(int real_dim, int order);

/// Normalized-measure twisted mean on the unit rule scaled to q.radius.
template <class F>
MeanValue twisted_mean(const F& f, const MeanQuery& q, const sphere::SphereRule& unit) {
    if (!(q.radius > 0.0)) throw std::invalid_argument("twisted_mean: radius must be positive");
    const int n = q.center.dim();
    if (unit.real_dim() != 2 * n) throw std::invalid_argument("twisted_mean: rule dimension mismatch");
    const double sign = q.side == Side::Left ? 1.0 : -1.0;
    const double half = 0.5 * q.lambda * sign;
    sphere::detail::BlockAccumulator acc;
    acc.blocks.reserve(unit.size() / 64 + 1);
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const ComplexPoint w = q.radius * unit.complex_node(i);
        Complex v = Complex(f(q.center - w)) * std::polar(1.0, half * symplectic(q.center, w));
        if (q.weight) v *= q.weight->eval(w);
        acc.add(v, unit.weight(i));
    }
    const sphere::SphereAverage avg = acc.finish();
    return {avg.value, avg.abs_mass};
}

/// f x nu_r(z) with nu_r = P dmu_r.
template <class F>
MeanValue weighted_twisted_mean(const F& f, const ComplexPoint& z, double r, const ComplexPoly& p,
                                const sphere::SphereRule& unit) {
    MeanQuery q{z, r, 1.0, Side::Left, &p};
    return twisted_mean(f, q, unit);
}

/// f * mu_r (x) = int f(x + y) [P(y)] dmu_r(y) on R^d.
template <class F>
MeanValue euclidean_mean(const F& f, const RealPoint& x, double r, const sphere::SphereRule& unit,
                         const RealPoly* weight = nullptr) {
    if (!(r > 0.0)) throw std::invalid_argument("euclidean_mean: radius must be positive");
    if (unit.real_dim() != x.dim()) throw std::invalid_argument("euclidean_mean: rule dimension mismatch");
    sphere::detail::BlockAccumulator acc;
    acc.blocks.reserve(unit.size() / 64 + 1);
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const RealPoint y = r * unit.real_node(i);
        Complex v = Complex(f(x + y));
        if (weight) v *= weight->eval(y);
        acc.add(v, unit.weight(i));
    }
    const sphere::SphereAverage avg = acc.finish();
    return {avg.value, avg.abs_mass};
}

/// tau_eta f (xi) = f(xi - eta) e^{(i/2) Im(eta . xibar)}
Field twisted_translate(Field f, const ComplexPoint& eta);

// ---------------------------------------------------------------- projections

/// B_k^m <a, phi_k^{m-1}> where <.,.> is the L^2(C^m) pairing against
/// (2pi)^{-m} dz, so that sum_k B_k^m <a, phi_k> phi_k = a. Radial integral by
/// Gauss-Laguerre in t = rho^2/2. Throws NumericalError if the integrand has
/// not decayed at the last node (non-integrable profile).
Complex projection_coefficient(const RadialProfile& a, int k, int m, int nodes = 64);

/// B_k^m <a, phi_k^{m-1}> phi_k^{m-1} as a profile.
RadialProfile radial_projection(const RadialProfile& a, int k, int m, int nodes = 64);

/// (a x phi_j^{m-1})(z) on C^m for radial a, equal to (2pi)^m B_j^m <a, phi_j> phi_j(z).
/// Returns the scalar multiplying phi_j^{m-1}(|z|).
Complex radial_twisted_convolution_factor(const RadialProfile& a, int j, int m, int nodes = 64);

// --------------------------------------------------------------- identities

/// Order schedule for sphere rules at radius r around a center of norm c:
/// enough to resolve the twist phase and a Gaussian of width ~1.
int scheduled_order(double r, double center_norm, int extra_degree = 0);

struct HeckeBochnerPoint {
    ComplexPoint z;
    int k = 0;
    Complex lhs;
    Complex rhs;
    double scale = 0.0;     // |S| int r^{2n-1} |phi_k(r)| mass(r) dr
    double residual = 0.0;  // |lhs - rhs| / max(scale, |rhs|)
    bool vanishing = false; // k < p
};

/// (a~ P) x phi_k^{n-1} (z) against (2pi)^{-(p+q)} P(z) (a~ x phi_{k-p}^{N-1})(z) on C^N,
/// N = n + p + q, for every k in ks and z in zs. The left side is
///   |S^{2n-1}| int_0^inf r^{2n-1} phi_k(r) [(a~P) x mu_r](z) dr,
/// computed with composite Gauss-Legendre in r; the sphere means are shared
/// across all k.
std::vector<HeckeBochnerPoint> hecke_bochner_check(const RadialProfile& a, const ComplexPoly& p_poly, int p, int q,
                                                   std::span<const int> ks, std::span<const ComplexPoint> zs,
                                                   int radial_panels = 12, int panel_nodes = 12);

struct CSample {
    ComplexPoint z;
    double r = 0.0;
    int k = 0;
    Complex ratio;   // weighted mean / (r^{2(p+q)} phi_{k-q}^{N-1}(r) P(z) phi_{k-q}^{N-1}(z))
    Complex kappa;   // ratio / B_{k-q}^{N}
    double mass = 0.0;
};

struct CResult {
    std::vector<CSample> samples;
    Complex kappa;             // mean of the per-sample kappa
    double kappa_spread = 0.0; // max relative deviation of kappa over all samples
    double ratio_spread = 0.0; // max relative deviation of the raw ratio within each k
    double closed_form = 0.0;  // 2^{-(p+q)} (n-1)! / (N-1)!
};

/// Measures the weighted-mean constant for phi_k^{n-1} x (P mu_r) on the given
/// (z, r) pairs and degrees k >= q. Pairs whose denominator is below
/// `min_denominator` relative to the numerator mass are rejected with
/// std::domain_error so the caller can resample.
CResult determine_C(int n, const ComplexPoly& p_poly, int p, int q, std::span<const int> ks,
                    std::span<const std::pair<ComplexPoint, double>> samples, double min_denominator = 1e-3);

/// Closed form 2^{-(p+q)} (n-1)! / (n+p+q-1)!.
double c_closed_form(int n, int p, int q);

/// twisted_mean at parameter lambda against the lambda = 1 mean of
/// g(u) = f(u / sqrt(lambda)) at (sqrt(lambda) z, sqrt(lambda) s).
double lambda_reduction_check(const Field& f, const ComplexPoint& z, double s, double lambda,
                              const sphere::SphereRule& unit);

}  // namespace twistmeans::means
