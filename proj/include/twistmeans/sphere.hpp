#pragma once

#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "twistmeans/core.hpp"
#include "twistmeans/quadrature.hpp"

namespace twistmeans::sphere {

/// Quadrature for the normalized surface measure on the sphere of radius r
/// in R^d (d in {2, 3, 4, 6}). Nodes are stored as d real coordinates; for
/// even d they are read as points of C^{d/2} (Re w_1, Im w_1, ...).
///
/// Invariants: weights are positive and sum to 1; every node has norm r.
class SphereRule {
public:
    SphereRule(int real_dim, double radius, int order, std::vector<double> coords, std::vector<double> weights);

    int real_dim() const { return real_dim_; }
    int complex_dim() const { return real_dim_ / 2; }
    double radius() const { return radius_; }
    int order() const { return order_; }
    std::size_t size() const { return weights_.size(); }

    std::span<const double> coords(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(real_dim_), static_cast<std::size_t>(real_dim_)};
    }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }

    ComplexPoint complex_node(std::size_t i) const {
        ComplexPoint w(complex_dim());
        const double* c = coords_.data() + i * static_cast<std::size_t>(real_dim_);
        for (int j = 0; j < complex_dim(); ++j) w[j] = Complex(c[2 * j], c[2 * j + 1]);
        return w;
    }
    RealPoint real_node(std::size_t i) const {
        RealPoint x(real_dim_);
        const double* c = coords_.data() + i * static_cast<std::size_t>(real_dim_);
        for (int j = 0; j < real_dim_; ++j) x[j] = c[j];
        return x;
    }

    /// The same rule on the sphere of another radius.
    SphereRule scaled(double radius) const;

private:
    int real_dim_;
    double radius_;
    int order_;
    std::vector<double> coords_;
    std::vector<double> weights_;
};

/// Builds a rule exact for all polynomials of total degree <= order.
/// S^1: equispaced trapezoid. S^2: Gauss-Legendre in cos(theta) x trapezoid.
/// S^3, S^5: Hopf-type coordinates w_j = sqrt(u_j) e^{i theta_j}, trapezoid in
/// every phase and Gauss-Legendre over the simplex of the u_j.
/// Exactness is certified against closed-form moments up to the largest
/// degree whose check stays affordable (see certify_exactness).
/// Throws std::length_error above 4e6 nodes (S^5 tops out near order 32).
SphereRule build_sphere_rule(int real_dim, double radius, int order);

/// Max absolute error of the rule over all monomials of degree <= max_degree
/// in the real coordinates, against exact normalized moments.
double certify_exactness(const SphereRule& rule, int max_degree);

/// Exact normalized moment of x^a over the unit sphere in R^d.
double monomial_moment(std::span<const int> exponents);

/// Surface area of the unit sphere in R^d.
double sphere_area(int real_dim);

/// Smallest order N (by doubling from 8) such that doubling N changes the
/// sphere integrals of the Gaussian-damped test family
///   w -> exp(-decay |c - r w|^2) [twist phase] x^m,  |c| = center_norm,
/// by less than tol relative to their absolute mass.
int converged_order(int real_dim, double radius, double center_norm, double decay = 0.25, double tol = 1e-10);

struct SphereAverage {
    Complex value;
    double abs_mass = 0.0;
};

namespace detail {

struct BlockAccumulator {
    std::vector<Complex> blocks;
    Complex current = 0.0;
    double mass = 0.0;
    int count = 0;
    void add(Complex v, double w) {
        current += w * v;
        mass += w * std::abs(v);
        if (++count == 64) {
            blocks.push_back(current);
            current = 0.0;
            count = 0;
        }
    }
    SphereAverage finish() {
        blocks.push_back(current);
        return {quadrature::pairwise_sum(blocks), mass};
    }
};

}  // namespace detail

/// sum_i w_i f(node_i), with deterministic blocked pairwise summation.
/// f takes either a ComplexPoint (even dimensions) or a RealPoint.
template <class F>
SphereAverage integrate_with_mass(const SphereRule& rule, F&& f) {
    detail::BlockAccumulator acc;
    acc.blocks.reserve(rule.size() / 64 + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if constexpr (std::is_invocable_v<F, const ComplexPoint&>) {
            acc.add(Complex(f(rule.complex_node(i))), rule.weight(i));
        } else {
            acc.add(Complex(f(rule.real_node(i))), rule.weight(i));
        }
    }
    return acc.finish();
}

template <class F>
Complex integrate(const SphereRule& rule, F&& f) {
    return integrate_with_mass(rule, std::forward<F>(f)).value;
}

/// Lebesgue integral over the annulus inner < |x| < outer in R^d, in polar
/// form: area(S^{d-1}) int s^{d-1} (int f(s w) dmu(w)) ds, Gauss-Legendre in s.
template <class F>
Complex annulus_integrate(F&& f, double inner, double outer, int real_dim, int radial_order, int angular_order = 24) {
    if (!(inner >= 0.0 && inner < outer)) throw std::invalid_argument("annulus_integrate: need 0 <= inner < outer");
    const SphereRule unit = build_sphere_rule(real_dim, 1.0, angular_order);
    const quadrature::Rule1D radial = quadrature::gauss_legendre(radial_order, inner, outer);
    std::vector<Complex> shells;
    shells.reserve(radial.nodes.size());
    for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
        const double s = radial.nodes[k];
        Complex shell;
        if constexpr (std::is_invocable_v<F, const ComplexPoint&>) {
            shell = integrate(unit, [&](const ComplexPoint& w) { return Complex(f(s * w)); });
        } else {
            shell = integrate(unit, [&](const RealPoint& w) { return Complex(f(s * w)); });
        }
        shells.push_back(radial.weights[k] * std::pow(s, real_dim - 1) * shell);
    }
    return sphere_area(real_dim) * quadrature::pairwise_sum(shells);
}

}  // namespace twistmeans::sphere
