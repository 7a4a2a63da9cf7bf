#include <cmath>

#include "doctest.h"
#include "twistmeans/operators.hpp"
#include "twistmeans/special_functions.hpp"

using namespace twistmeans;
using namespace twistmeans::operators;

namespace {

std::vector<ComplexPoint> grid2() {
    return {ComplexPoint{Complex(0.3, -0.2), Complex(0.1, 0.4)}, ComplexPoint{Complex(1.2, 0.7), Complex(-0.5, 1.1)},
            ComplexPoint{Complex(-2.0, 0.4), Complex(1.3, -0.9)}, ComplexPoint{Complex(0.0, 2.5), Complex(0.6, 0.0)}};
}

StructuredFunction phi(int k, int n) {
    return StructuredFunction::from(RadialProfile::laguerre_function(k, n), ComplexPoly::constant(n, 1.0));
}

}  // namespace

TEST_CASE("radial profiles") {
    const RadialProfile lag = RadialProfile::laguerre_function(3, 2, 2.0);
    const auto terms = lag.as_exp_power();
    REQUIRE(terms.has_value());
    const RadialProfile ep = RadialProfile::exp_power(*terms);
    for (double r : {0.0, 0.4, 1.7, 3.9, 7.5}) {
        CHECK(std::abs(lag(r) - 2.0 * special::phi_eval({3, 2}, r)) < 1e-14);
        CHECK(std::abs(ep(r) - lag(r)) < 1e-12);
        CHECK(std::abs(ep.derivative(r) - lag.derivative(r)) < 1e-12);
        const double h = 1e-4;
        if (r > h) CHECK(std::abs((lag(r + h) - lag(r - h)) / (2 * h) - lag.derivative(r)) < 1e-7);
    }

    const RadialProfile b = RadialProfile::bessel(1.5, 4);
    CHECK(std::abs(b(0.0) - 1.0) < 1e-15);
    // d = 2: J_0
    CHECK(std::abs(RadialProfile::bessel(2.0, 2)(1.3) - special::bessel_j(0.0, 2.6)) < 1e-14);
    // d = 3: sin(lambda r) / (lambda r)
    CHECK(std::abs(RadialProfile::bessel(2.0, 3)(1.3) - std::sin(2.6) / 2.6) < 1e-13);
    CHECK(std::abs((b(2.0 + 1e-4) - b(2.0 - 1e-4)) / 2e-4 - b.derivative(2.0)) < 1e-7);

    std::vector<double> g;
    std::vector<Complex> v;
    for (int i = 0; i <= 200; ++i) {
        g.push_back(0.05 * i);
        v.push_back(std::exp(-0.25 * g.back() * g.back()));
    }
    const RadialProfile s = RadialProfile::sampled(g, v);
    for (double r : {0.013, 1.234, 5.55, 9.97}) {
        CHECK(std::abs(s(r) - std::exp(-0.25 * r * r)) < 1e-9);
        CHECK(std::abs(s.derivative(r) + 0.5 * r * std::exp(-0.25 * r * r)) < 1e-7);
    }
    CHECK_THROWS_AS(RadialProfile::sampled({1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);

    const RadialProfile f = RadialProfile::from_function([](double r) { return Complex(r * r); });
    CHECK(std::abs(f(3.0) - 9.0) < 1e-15);
    CHECK_FALSE(f.has_derivative());
    CHECK_THROWS_AS(f.derivative(1.0), std::logic_error);
    CHECK_FALSE(b.as_exp_power().has_value());
}

TEST_CASE("A1* lowers phi into one dimension higher") {
    for (int n : {1, 2, 3})
        for (int k : {0, 1, 4}) {
            const StructuredFunction g = apply({Kind::As, 0, 1}, phi(k, n));
            for (double s : {0.2, 1.0, 2.7}) {
                ComplexPoint z(n);
                for (int j = 0; j < n; ++j) z[j] = s * Complex(0.6 - 0.1 * j, 0.3 + 0.2 * j);
                const Complex expected = -0.5 * z[0] * special::phi_eval({k, n + 1}, z.norm());
                CHECK(std::abs(g(z) - expected) < 1e-13);
            }
        }
}

TEST_CASE("monomial Weyl operators on phi_k") {
    const int n = 2;
    for (Kind kind : {Kind::A, Kind::Z})
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q)
                for (int k = 0; k <= 4; ++k) {
                    const StructuredFunction g = monomial_weyl(p, q, kind, phi(k, n));
                    const int shift = kind == Kind::A ? q : p;
                    for (const ComplexPoint& z : grid2()) {
                        Complex expected = 0.0;
                        if (k >= shift)
                            expected = std::pow(-0.5, p + q) * std::pow(z[0], p) * std::pow(std::conj(z[1]), q) *
                                       special::phi_eval({k - shift, n + p + q}, z.norm());
                        CAPTURE(p);
                        CAPTURE(q);
                        CAPTURE(k);
                        CHECK(std::abs(g(z) - expected) < 1e-12);
                    }
                }
}

TEST_CASE("finite differences agree with the structured path") {
    const StructuredFunction f = StructuredFunction::from(RadialProfile::laguerre_function(2, 2),
                                                          ComplexPoly::z1p_zbar2q(2, 1, 1));
    const Field black = [f](const ComplexPoint& z) { return f(z); };
    for (Kind kind : {Kind::A, Kind::As, Kind::Z, Kind::Zs})
        for (int j : {0, 1}) {
            const StructuredFunction exact = apply({kind, j, 1}, f);
            const Field approx = apply({kind, j, 1}, black);
            for (const ComplexPoint& z : grid2()) CHECK(std::abs(exact(z) - approx(z)) < 1e-6);
        }
    const Field w = monomial_weyl(1, 1, Kind::A, black);
    const StructuredFunction we = monomial_weyl(1, 1, Kind::A, f);
    for (const ComplexPoint& z : grid2()) CHECK(std::abs(w(z) - we(z)) < 1e-6);
}

TEST_CASE("commutation relations") {
    const StructuredFunction f = StructuredFunction::from(RadialProfile::laguerre_function(1, 2),
                                                          ComplexPoly::z1p_zbar2q(2, 2, 1));
    auto ap = [](Kind k, int j, const StructuredFunction& g) { return apply({k, j, 1}, g); };
    // [A_1, A_1*] = -1/2
    const StructuredFunction c1 = ap(Kind::A, 0, ap(Kind::As, 0, f)) - ap(Kind::As, 0, ap(Kind::A, 0, f));
    // [Z_1, Z_1*] = +1/2
    const StructuredFunction c2 = ap(Kind::Z, 0, ap(Kind::Zs, 0, f)) - ap(Kind::Zs, 0, ap(Kind::Z, 0, f));
    for (const ComplexPoint& z : grid2()) {
        CHECK(std::abs(c1(z) + 0.5 * f(z)) < 1e-12);
        CHECK(std::abs(c2(z) - 0.5 * f(z)) < 1e-12);
    }
    // left and right families commute
    for (Kind a : {Kind::A, Kind::As})
        for (Kind b : {Kind::Z, Kind::Zs})
            for (int i : {0, 1})
                for (int j : {0, 1}) {
                    const StructuredFunction c = ap(a, i, ap(b, j, f)) - ap(b, j, ap(a, i, f));
                    for (const ComplexPoint& z : grid2()) CHECK(std::abs(c(z)) < 1e-12);
                }
}

TEST_CASE("radial ladder") {
    for (int k = 0; k <= 8; ++k)
        for (int m = 1; m <= 5; ++m)
            for (double rho : {0.05, 0.8, 2.0, 4.5, 8.0}) {
                CHECK(std::abs(radial_ladder(Kind::D, k, m, rho) + special::phi_eval({k, m + 1}, rho)) < 1e-10);
                const double down = k == 0 ? 0.0 : special::phi_eval({k - 1, m + 1}, rho);
                CHECK(std::abs(radial_ladder(Kind::Ds, k, m, rho) + down) < 1e-10);
            }
    CHECK_THROWS_AS(radial_ladder(Kind::D, 1, 1, 0.0), std::invalid_argument);

    // compositions on exp-power profiles against the coefficient oracle
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            const int k = 3, m = 2;
            RadialProfile a = RadialProfile::laguerre_function(k, m);
            a = RadialProfile::exp_power(*a.as_exp_power());
            for (int i = 0; i < q; ++i) a = radial_ladder(Kind::Ds, a);
            for (int i = 0; i < p; ++i) a = radial_ladder(Kind::D, a);
            const RadialProfile expected = RadialProfile::laguerre_series(m + p + q, [&] {
                const auto c = radial_ladder_coefficients(p, q, k);
                return std::vector<Complex>(c.begin(), c.end());
            }());
            for (double rho : {0.3, 1.5, 3.0, 6.0}) CHECK(std::abs(a(rho) - expected(rho)) < 1e-10);
        }
}

TEST_CASE("euclidean dbar") {
    const RealPoly x1 = RealPoly::coordinate(3, 0);
    const RealStructuredFunction f =
        RealStructuredFunction::from(RadialProfile::exp_power({{1.0, 0.0, -1.0}}), x1);
    const RealField black = [f](const RealPoint& x) { return f(x); };
    for (int k : {1, 2}) {
        const RealStructuredFunction e = euclid_dbar(f, k);
        const RealField a = euclid_dbar(black, k);
        for (const RealPoint& x : {RealPoint{0.3, -0.4, 1.0}, RealPoint{1.5, 0.2, -0.7}}) CHECK(std::abs(e(x) - a(x)) < 1e-6);
    }
    // dbar (x1 + i x2)^2 = 0
    const RealStructuredFunction h =
        RealStructuredFunction::from(RadialProfile::exp_power({{1.0, 0.0, 0.0}}), RealPoly::x1_plus_ix2_pow(3, 2));
    CHECK(std::abs(euclid_dbar(h, 1)(RealPoint{0.7, 0.1, 0.2})) < 1e-15);
}
