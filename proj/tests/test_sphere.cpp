#include <cmath>

#include "doctest.h"
#include "twistmeans/sphere.hpp"

using namespace twistmeans;
using namespace twistmeans::sphere;

TEST_CASE("rules are normalized and on the sphere") {
    for (int d : {2, 3, 4, 6}) {
        const SphereRule rule = build_sphere_rule(d, 1.7, 10);
        double worst = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            CHECK(rule.weight(i) > 0.0);
            worst = std::max(worst, std::abs(rule.real_node(i).norm() - 1.7));
        }
        CHECK(quadrature::pairwise_sum(rule.weights()) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(worst < 1e-12);
    }
    CHECK_THROWS_AS(build_sphere_rule(5, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_sphere_rule(6, 1.0, 64), std::length_error);
}

TEST_CASE("exactness on monomials") {
    for (int d : {2, 3, 4, 6}) {
        const SphereRule rule = build_sphere_rule(d, 1.0, 8);
        CHECK(certify_exactness(rule, 8) < 1e-13);
    }
    // one degree beyond the order is no longer guaranteed on S^1
    const SphereRule circle = build_sphere_rule(2, 1.0, 4);
    CHECK(certify_exactness(circle, 5) > 1e-3);
}

TEST_CASE("simple integrals") {
    const SphereRule s3 = build_sphere_rule(4, 1.0, 8);
    CHECK(std::abs(integrate(s3, [](const ComplexPoint& w) { return w[0]; })) < 1e-15);
    for (int d : {2, 4, 6}) {
        const SphereRule rule = build_sphere_rule(d, 1.0, 6);
        const Complex v = integrate(rule, [](const ComplexPoint& w) { return Complex(std::norm(w[0])); });
        CHECK(v.real() == doctest::Approx(2.0 / d).epsilon(1e-14));
        const Complex one = integrate(rule, [](const ComplexPoint& w) {
            ComplexPoint z(w.dim());
            return std::polar(1.0, 0.5 * symplectic(z, w));
        });
        CHECK(one.real() == doctest::Approx(1.0));
    }
    // harmonic of degree 2 on S^2
    const SphereRule s2 = build_sphere_rule(3, 1.0, 6);
    const Complex y = integrate(s2, [](const RealPoint& x) { return Complex(x[0] * x[0] - x[2] * x[2]); });
    CHECK(std::abs(y) < 1e-15);
}

TEST_CASE("scaling") {
    const SphereRule unit = build_sphere_rule(4, 1.0, 16);
    const SphereRule big = unit.scaled(2.5);
    auto f = [](const ComplexPoint& w) { return std::exp(-0.25 * w.norm_sq()) * w[0] * std::conj(w[1]) + w[1]; };
    const Complex a = integrate(big, f);
    const Complex b = integrate(unit, [&](const ComplexPoint& w) { return f(2.5 * w); });
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("annulus") {
    const Complex area = annulus_integrate([](const ComplexPoint&) { return 1.0; }, 0.0, 1.0, 2, 4);
    CHECK(area.real() == doctest::Approx(kPi).epsilon(1e-14));
    const Complex shell = annulus_integrate([](const RealPoint&) { return 1.0; }, 1.0, 2.0, 3, 4);
    CHECK(shell.real() == doctest::Approx(4.0 * kPi / 3.0 * 7.0).epsilon(1e-14));
    const Complex odd = annulus_integrate([](const ComplexPoint& w) { return w[0].real(); }, 0.5, 2.0, 4, 6);
    CHECK(std::abs(odd) < 1e-14);
    // divergence form: int_{Ann} div(x g(|x|)) = boundary flux, g = e^{-s^2}
    // div(x e^{-|x|^2}) = (d - 2|x|^2) e^{-|x|^2}; flux through S_s is s e^{-s^2} area(S_s)
    const int d = 4;
    const Complex lhs = annulus_integrate(
        [](const RealPoint& x) { return (4.0 - 2.0 * x.norm_sq()) * std::exp(-x.norm_sq()); }, 0.5, 2.0, d, 30);
    auto flux = [&](double s) { return s * std::exp(-s * s) * sphere_area(d) * std::pow(s, d - 1); };
    CHECK(lhs.real() == doctest::Approx(flux(2.0) - flux(0.5)).epsilon(1e-12));
}

TEST_CASE("convergence gate") {
    const int order = converged_order(4, 2.0, 1.0);
    CHECK(order >= 8);
    CHECK(order <= 256);
}
