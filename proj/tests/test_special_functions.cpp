#include <cmath>
#include <vector>

#include "doctest.h"
#include "twistmeans/quadrature.hpp"
#include "twistmeans/special_functions.hpp"

using namespace twistmeans;
using namespace twistmeans::special;

TEST_CASE("laguerre_eval small cases") {
    CHECK(laguerre_eval({0, 2.5}, 3.7) == 1.0);
    CHECK(laguerre_eval({1, 1.0}, 2.0) == doctest::Approx(0.0));
    CHECK(laguerre_eval({2, 1.0}, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("laguerre_eval against high-precision values") {
    // mpmath.laguerre at 30 digits
    CHECK(laguerre_eval({5, 2.0}, 3.7) == doctest::Approx(2.67386608333333369591663005356).epsilon(1e-13));
    CHECK(laguerre_eval({12, 1.0}, 20.0) == doctest::Approx(-2366.3469082357971246860135749).epsilon(1e-12));
    CHECK(laguerre_eval({20, 3.0}, 45.0) == doctest::Approx(54963207.6585641442343377171328).epsilon(1e-12));
}

TEST_CASE("recurrence and binomial sum agree for small degree") {
    for (int k = 0; k <= 8; ++k)
        for (double a : {0.0, 1.0, 2.5})
            for (double x : {0.0, 0.3, 1.7, 4.0}) {
                const double r = laguerre_eval({k, a}, x);
                CHECK(laguerre_eval_sum({k, a}, x) == doctest::Approx(r).epsilon(1e-12));
            }
}

TEST_CASE("L_{k-1}^{a+1} + L_k^a = L_k^{a+1}") {
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k)
        for (int a = 0; a <= 3; ++a)
            for (double x = 0.0; x <= 50.0; x += 0.5) {
                const double lhs = laguerre_eval({k - 1, a + 1.0}, x) + laguerre_eval({k, double(a)}, x);
                const double rhs = laguerre_eval({k, a + 1.0}, x);
                const double scale = std::max({std::abs(rhs), std::abs(laguerre_eval({k, double(a)}, x)), 1.0});
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
    CHECK(worst < 1e-12);
}

TEST_CASE("laguerre_deriv") {
    CHECK(laguerre_deriv({1, 1.0}, 5.0) == doctest::Approx(-1.0));
    CHECK(laguerre_deriv({0, 3.0}, 1.0) == 0.0);
    const double exact = -laguerre_eval({2, 3.0}, 1.3);
    CHECK(laguerre_deriv({3, 2.0}, 1.3) == exact);
    for (double h : {1e-2, 1e-3}) {
        const double fd = (laguerre_eval({3, 2.0}, 1.3 + h) - laguerre_eval({3, 2.0}, 1.3 - h)) / (2 * h);
        CHECK(fd == doctest::Approx(exact).epsilon(1e-4));
    }
}

TEST_CASE("laguerre_zeros") {
    auto z = laguerre_zeros({1, 1.0});
    REQUIRE(z.size() == 1);
    CHECK(z[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(laguerre_zeros({1, 0.0})[0] == doctest::Approx(1.0).epsilon(1e-14));
    z = laguerre_zeros({2, 1.0});
    REQUIRE(z.size() == 2);
    CHECK(z[0] == doctest::Approx(3.0 - std::sqrt(3.0)).epsilon(1e-13));
    CHECK(z[1] == doctest::Approx(3.0 + std::sqrt(3.0)).epsilon(1e-13));
    // roots of L_4^1 from mpmath.polyroots
    z = laguerre_zeros({4, 1.0});
    const std::vector<double> ref{0.74329192798143143546, 2.571635007646278475, 5.7311787516890996342,
                                  10.953894312683190455};
    for (int i = 0; i < 4; ++i) CHECK(z[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    CHECK_THROWS_AS(laguerre_zeros({0, 1.0}), std::invalid_argument);
}

TEST_CASE("zeros are roots, distinct, and interlace") {
    for (int a = 0; a <= 3; ++a) {
        std::vector<double> prev;
        for (int k = 1; k <= 12; ++k) {
            const auto z = laguerre_zeros({k, double(a)});
            REQUIRE(z.size() == static_cast<std::size_t>(k));
            for (double x : z) {
                // relative to the size of the terms near the root
                const double scale = std::max(1.0, std::abs(laguerre_deriv({k, double(a)}, x)) * x);
                CHECK(std::abs(laguerre_eval({k, double(a)}, x)) / scale <= 1e-10);
            }
            for (std::size_t i = 1; i < z.size(); ++i) CHECK(z[i] > z[i - 1]);
            for (std::size_t i = 0; i < prev.size(); ++i) {
                CHECK(z[i] < prev[i]);
                CHECK(prev[i] < z[i + 1]);
            }
            prev = z;
        }
    }
}

TEST_CASE("phi_eval") {
    for (double r : {0.0, 0.7, 3.0}) CHECK(phi_eval({0, 3}, r) == doctest::Approx(std::exp(-r * r / 4)));
    CHECK(std::abs(phi_eval({1, 2}, 2.0)) < 1e-15);
    CHECK(phi_eval({4, 3}, 0.0) == doctest::Approx(binomial(6.0, 4)));
    // decays beyond the last zero
    const double last = laguerre_zeros({6, 1.0}).back();
    const double rho = std::sqrt(2.0 * last) + 6.0;
    CHECK(std::abs(phi_eval({6, 2}, rho)) < 1e-6);
}

TEST_CASE("bessel") {
    CHECK(bessel_phi_eval({1.3, 2}, 0.0) == 1.0);
    CHECK(bessel_phi_eval({2.0, 5}, 0.0) == 1.0);
    // near the series/asymptotic switch both branches are good to a few 1e-13 absolute
    for (double r : {0.01, 0.5, 2.0, 7.3, 11.9, 12.1, 25.0, 60.0}) {
        CHECK(bessel_phi_eval({1.0, 3}, r) == doctest::Approx(std::sin(r) / r).epsilon(1e-12).scale(1.0));
        CHECK(bessel_phi_eval({2.0, 3}, r) ==
              doctest::Approx(std::sin(2 * r) / (2 * r)).epsilon(1e-12).scale(1.0));
    }
    // mpmath.besselj at 30 digits
    CHECK(bessel_j(0, 5.0) == doctest::Approx(-0.177596771314338304347397013075).epsilon(1e-13));
    CHECK(bessel_j(1, 20.5) == doctest::Approx(0.136254688193395736606338043446).epsilon(1e-12));
    CHECK(bessel_j(0, 30.0) == doctest::Approx(-0.0863679835810402113359623244961).epsilon(1e-12));
    CHECK(bessel_j(2, 13.0) == doctest::Approx(-0.217744264241956791174612026733).epsilon(1e-12));
    for (int nu = 0; nu <= 3; ++nu)
        for (double x : {0.5, 3.0, 11.0, 13.0, 40.0})
            CHECK(bessel_j(nu, x) == doctest::Approx(std::cyl_bessel_j(double(nu), x)).epsilon(1e-12).scale(1.0));
    CHECK(bessel_j_zero(0.0, 1) == doctest::Approx(2.40482555769577276862163187933).epsilon(1e-13));
    CHECK(bessel_j_zero(0.5, 1) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(bessel_j_zero(1.0, 1) == doctest::Approx(3.83170597020751231561443588631).epsilon(1e-13));
}

TEST_CASE("bessel_phi_deriv matches finite differences") {
    for (int dim : {2, 3, 4})
        for (double r : {0.3, 2.0, 9.0, 14.0}) {
            const BesselRadialSpec s{1.7, dim};
            const double h = 1e-5;
            const double fd = (bessel_phi_eval(s, r + h) - bessel_phi_eval(s, r - h)) / (2 * h);
            CHECK(bessel_phi_deriv(s, r) == doctest::Approx(fd).epsilon(1e-7).scale(1e-8));
        }
}

TEST_CASE("b_constant") {
    CHECK(b_constant(0, 5) == Rational(1));
    CHECK(b_constant(1, 2) == Rational(1, 2));
    CHECK(b_constant(2, 2) == Rational(1, 3));
    CHECK(b_constant(3, 3) == Rational(1, 10));
}

TEST_CASE("gauss rules") {
    const auto gl = quadrature::gauss_legendre(7, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 13);
    CHECK(s == doctest::Approx(std::pow(2.0, 14) / 14).epsilon(1e-14));
    // int t^a t^j e^{-t} dt = Gamma(a + j + 1)
    const auto lg = quadrature::gauss_laguerre(10, 1.0);
    for (int j = 0; j <= 19; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < lg.nodes.size(); ++i) acc += lg.weights[i] * std::pow(lg.nodes[i], j);
        CHECK(acc == doctest::Approx(std::tgamma(j + 2.0)).epsilon(1e-11));
    }
}
