#include <cmath>
#include <random>

#include "doctest.h"
#include "twistmeans/means.hpp"
#include "twistmeans/operators.hpp"
#include "twistmeans/special_functions.hpp"

using namespace twistmeans;
using namespace twistmeans::means;

namespace {

ComplexPoint random_point(std::mt19937_64& gen, int n, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    ComplexPoint z(n);
    for (int j = 0; j < n; ++j) z[j] = Complex(g(gen), g(gen));
    return z;
}

Field phi_field(int k, int n) {
    return [k, n](const ComplexPoint& u) { return Complex(special::phi_eval({k, n}, u.norm())); };
}

}  // namespace

TEST_CASE("trivial means") {
    const auto& rule = unit_rule(4, 16);
    const ComplexPoint z0(2);
    const MeanValue c = twisted_mean([](const ComplexPoint&) { return Complex(3.0); }, MeanQuery{z0, 1.4, 2.0}, rule);
    CHECK(std::abs(c.value - 3.0) < 1e-14);
    const auto& r3 = unit_rule(3, 16);
    const MeanValue lin = euclidean_mean([](const RealPoint& x) { return Complex(x[0] - 2.0 * x[2]); }, RealPoint(3), 2.0, r3);
    CHECK(std::abs(lin.value) < 1e-14);
    CHECK_THROWS_AS(twisted_mean(phi_field(0, 2), MeanQuery{z0, 0.0}, rule), std::invalid_argument);
}

TEST_CASE("Laguerre functional relation on both sides") {
    std::mt19937_64 gen(7);
    for (int n : {1, 2, 3})
        for (int k : {0, 1, 3, 6})
            for (double r : {0.5, 2.0, 4.0}) {
                if (n == 3 && (r > 2.0 || k > 3)) continue;  // S^5 rules stay below order 32
                const ComplexPoint z = random_point(gen, n, n == 3 ? 0.3 : 0.8);
                const double b = special::b_constant(k, n).to_double();
                const Complex expected = b * special::phi_eval({k, n}, r) * special::phi_eval({k, n}, z.norm());
                const auto& rule = unit_rule(2 * n, scheduled_order(r, z.norm(), 2 * k));
                for (Side side : {Side::Left, Side::Right}) {
                    MeanQuery q{z, r};
                    q.side = side;
                    CAPTURE(n);
                    CAPTURE(k);
                    CHECK(twisted_mean(phi_field(k, n), q, rule).relative_to(expected) < 1e-10);
                }
            }
}

TEST_CASE("Bessel eigenrelation and its zero set") {
    for (int d : {2, 3})
        for (double lambda : {1.0, 2.0}) {
            const RadialProfile psi = RadialProfile::bessel(lambda, d);
            const auto f = [&](const RealPoint& x) { return psi(x.norm()); };
            const auto& rule = unit_rule(d, 64);
            RealPoint x(d);
            x[0] = 0.7;
            x[d - 1] = -1.1;
            for (double r : {0.5, 1.0, 2.0}) {
                const MeanValue m = euclidean_mean(f, x, r, rule);
                CHECK(m.relative_to(psi(r) * psi(x.norm())) < 1e-10);
            }
            // lambda R = first zero of J_{d/2-1}: means vanish for centers on S_R
            const double radius = special::bessel_j_zero(0.5 * d - 1.0, 1) / lambda;
            RealPoint on(d);
            on[0] = radius * 0.6;
            on[1] = radius * 0.8;
            CHECK(std::abs(euclidean_mean(f, on, 1.3, rule).value) < 1e-10);
        }
}

TEST_CASE("weighted means and the constant C") {
    const std::vector<std::pair<ComplexPoint, double>> samples{
        {ComplexPoint{Complex(0.5, 0.2), Complex(-0.3, 0.6)}, 1.3},
        {ComplexPoint{Complex(1.1, -0.4), Complex(0.2, 0.9)}, 2.1},
        {ComplexPoint{Complex(-0.2, 0.7), Complex(0.8, -0.5)}, 0.9}};
    for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}}) {
        const ComplexPoly weight = ComplexPoly::z1p_zbar2q(2, p, q);
        const std::vector<int> ks{q, q + 1};
        const CResult c = determine_C(2, weight, p, q, ks, samples);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(c.ratio_spread < 1e-10);
        CHECK(c.kappa_spread < 1e-10);
        CHECK(std::abs(c.kappa - c.closed_form) < 1e-10 * c.closed_form);
    }
    CHECK(c_closed_form(2, 0, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(determine_C(2, ComplexPoly::z1p_zbar2q(2, 0, 2), 0, 2, std::vector<int>{1}, samples),
                    std::invalid_argument);

    // k < q: the weighted mean vanishes; phi_0 against H_{0,1} is the simplest case
    const ComplexPoly zb2 = ComplexPoly::coordinate(2, 1, true);
    for (const auto& [z, r] : samples) {
        const MeanValue m = weighted_twisted_mean(phi_field(0, 2), z, r, zb2, unit_rule(4, 48));
        CHECK(std::abs(m.value) < 1e-12);
        const MeanValue m2 = weighted_twisted_mean(phi_field(1, 2), z, r, ComplexPoly::z1p_zbar2q(2, 0, 2), unit_rule(4, 48));
        CHECK(std::abs(m2.value) < 1e-12);
    }
}

TEST_CASE("radial projections") {
    const int m = 2;
    const std::vector<Complex> coeffs{0.3, -1.2, Complex(0.5, 0.5), 0.0, 2.0, -0.7};
    const RadialProfile a = RadialProfile::laguerre_series(m, coeffs);
    for (int k = 0; k < 8; ++k) {
        const Complex expected = k < static_cast<int>(coeffs.size()) ? coeffs[k] : 0.0;
        CHECK(std::abs(projection_coefficient(a, k, m) - expected) < 1e-12);
    }
    const RadialProfile g = RadialProfile::exp_power({{1.0, 0.0, -1.0}});
    CHECK(std::abs(projection_coefficient(g, 0, m)) > 0.1);
    const RadialProfile phi0 = RadialProfile::laguerre_function(0, m);
    for (int k = 1; k < 5; ++k) CHECK(std::abs(projection_coefficient(phi0, k, m)) < 1e-12);
    const RadialProfile proj = radial_projection(a, 4, m);
    CHECK(std::abs(proj(1.3) - 2.0 * special::phi_eval({4, m}, 1.3)) < 1e-12);
    CHECK_THROWS_AS(projection_coefficient(RadialProfile::exp_power({{1.0, 0.0, 1.0}}), 0, m), NumericalError);
    // phi_j x phi_j = (2 pi)^m phi_j
    CHECK(std::abs(radial_twisted_convolution_factor(RadialProfile::laguerre_function(2, 3), 2, 3) -
                   std::pow(2.0 * kPi, 3)) < 1e-9);
}

TEST_CASE("Hecke-Bochner with the dimension shift") {
    const RadialProfile a = RadialProfile::exp_power({{1.0, 0.0, -4.0 / 3.0}});
    const std::vector<int> ks{0, 1, 2};
    const std::vector<ComplexPoint> zs{ComplexPoint{Complex(0.5, 0.2), Complex(-0.3, 0.6)}};
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}}) {
        const auto pts = hecke_bochner_check(a, ComplexPoly::z1p_zbar2q(2, p, q), p, q, ks, zs, 8, 12);
        for (const auto& pt : pts) {
            CAPTURE(pt.k);
            if (pt.vanishing)
                CHECK(std::abs(pt.lhs) < 1e-10);
            else
                CHECK(pt.residual < 1e-8);
        }
    }
}

TEST_CASE("lambda reduction and twisted-translate covariance") {
    const Field gauss = [](const ComplexPoint& u) {
        return std::exp(-0.3 * u.norm_sq()) * (1.0 + u[0] * std::conj(u[1]));
    };
    const auto& rule = unit_rule(4, 48);
    const ComplexPoint z{Complex(0.4, -0.9), Complex(1.0, 0.3)};
    for (double lambda : {1.0, 2.0, 0.5}) CHECK(lambda_reduction_check(gauss, z, 1.7, lambda, rule) < 1e-12);
    CHECK(lambda_reduction_check(gauss, ComplexPoint(2), 1.7, 3.0, rule) < 1e-14);
    CHECK_THROWS_AS(lambda_reduction_check(gauss, z, 1.0, 0.0, rule), std::invalid_argument);

    const ComplexPoint eta{Complex(0.6, 0.2), Complex(-0.5, 0.4)};
    const Field moved = twisted_translate(gauss, eta);
    for (double r : {0.5, 1.5, 3.0}) {
        const auto& rr = unit_rule(4, 64);
        // tau_eta (f x mu_r)(z) = (f x mu_r)(z - eta) e^{(i/2) Im(eta . zbar)}
        const Complex lhs = twisted_mean(gauss, MeanQuery{z - eta, r}, rr).value * std::polar(1.0, 0.5 * symplectic(eta, z));
        const MeanValue rhs = twisted_mean(moved, MeanQuery{z, r}, rr);
        CHECK(rhs.relative_to(lhs) < 1e-12);
    }
}

TEST_CASE("Z~ commutes with means, A~ does not") {
    const StructuredFunction f = StructuredFunction::from(RadialProfile::laguerre_function(1, 2),
                                                          ComplexPoly::z1p_zbar2q(2, 1, 0));
    const double r = 1.3;
    const auto& rule = unit_rule(4, 48);
    const Field mean_of_f = [&](const ComplexPoint& z) { return twisted_mean(f, MeanQuery{z, r}, rule).value; };
    const ComplexPoint z{Complex(0.3, 0.5), Complex(-0.4, 0.2)};
    for (operators::Kind kind : {operators::Kind::Z, operators::Kind::Zs}) {
        const operators::OperatorSpec op{kind, 0, 1};
        const Complex outer = operators::apply(op, mean_of_f)(z);
        const Complex inner = twisted_mean(operators::apply(op, f), MeanQuery{z, r}, rule).value;
        CHECK(std::abs(outer - inner) < 1e-8);
    }
    const operators::OperatorSpec a{operators::Kind::As, 0, 1};
    const Complex outer = operators::apply(a, mean_of_f)(z);
    const Complex inner = twisted_mean(operators::apply(a, f), MeanQuery{z, r}, rule).value;
    CHECK(std::abs(outer - inner) > 1e-3);
}

TEST_CASE("structured and black-box paths agree") {
    const StructuredFunction f = StructuredFunction::from(RadialProfile::laguerre_function(2, 2),
                                                          ComplexPoly::z1p_zbar2q(2, 1, 1));
    const Field black = [](const ComplexPoint& u) {
        return special::phi_eval({2, 2}, u.norm()) * u[0] * std::conj(u[1]);
    };
    const auto& rule = unit_rule(4, 48);
    const ComplexPoint z{Complex(0.7, 0.1), Complex(0.2, -0.6)};
    for (double r : {0.5, 2.0}) {
        const MeanValue s = twisted_mean(f, MeanQuery{z, r}, rule);
        const MeanValue b = twisted_mean(black, MeanQuery{z, r}, rule);
        CHECK(s.relative_to(b.value) < 1e-12);
    }
}
