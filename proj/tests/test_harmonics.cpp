#include <cmath>

#include "doctest.h"
#include "twistmeans/harmonics.hpp"
#include "twistmeans/special_functions.hpp"

using namespace twistmeans;
using namespace twistmeans::harmonics;

namespace {

// dim H_{p,q}(C^n) for n >= 2
int expected_dim(int n, int p, int q) {
    auto f = [](int m) { return std::tgamma(m + 1.0); };
    return static_cast<int>(std::lround(f(p + n - 2) * f(q + n - 2) * (p + q + n - 1) / (f(p) * f(q) * f(n - 1) * f(n - 2))));
}

double gram_defect(const std::vector<ComplexPoly>& e) {
    double worst = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j)
            worst = std::max(worst, std::abs(sphere_inner(e[i], e[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

}  // namespace

TEST_CASE("polynomial algebra") {
    const ComplexPoly z1 = ComplexPoly::coordinate(2, 0, false);
    const ComplexPoly zb1 = ComplexPoly::coordinate(2, 0, true);
    const ComplexPoly p = z1 * zb1 + Complex(0.0, 2.0) * z1;
    const ComplexPoint z{Complex(0.3, -1.2), Complex(2.0, 0.5)};
    CHECK(std::abs(p.eval(z) - (std::norm(z[0]) + Complex(0.0, 2.0) * z[0])) < 1e-14);
    CHECK(std::abs(p.d_zbar(0).eval(z) - z[0]) < 1e-15);
    CHECK(std::abs(p.d_z(0).eval(z) - (std::conj(z[0]) + Complex(0.0, 2.0))) < 1e-15);
    CHECK(std::abs(p.conjugate().eval(z) - std::conj(p.eval(z))) < 1e-14);
    CHECK(p.degree() == 2);
    CHECK_FALSE(p.is_bihomogeneous(1, 1));
    CHECK(ComplexPoly::z1p_zbar2q(2, 2, 3).is_bihomogeneous(2, 3));
    CHECK((p - p).is_zero());

    const auto comps = compositions(3, 2);
    CHECK(comps.size() == 6);
    CHECK(comps.front() == std::vector<int>{2, 0, 0});

    const RealPoly w = RealPoly::x1_plus_ix2_pow(3, 3);
    const RealPoint x{0.4, -0.7, 1.1};
    CHECK(std::abs(w.eval(x) - std::pow(Complex(0.4, -0.7), 3)) < 1e-14);
    CHECK(w.is_homogeneous(3));
}

TEST_CASE("laplacian") {
    const ComplexPoly z1 = ComplexPoly::coordinate(2, 0, false);
    const ComplexPoly zb1 = ComplexPoly::coordinate(2, 0, true);
    const ComplexPoly lap = laplacian(z1 * zb1);
    CHECK(lap.degree() == 0);
    CHECK(std::abs(lap.coefficient({0, 0, 0, 0}) - 4.0) < 1e-15);
    CHECK(laplacian(ComplexPoly::z1p_zbar2q(2, 3, 2)).is_zero());
    const RealPoly x1 = RealPoly::coordinate(3, 0);
    CHECK(std::abs(laplacian(x1 * x1).coefficient({0, 0, 0}) - 2.0) < 1e-15);
    CHECK(laplacian(RealPoly::x1_plus_ix2_pow(3, 4)).is_zero());
}

TEST_CASE("bigraded dimensions") {
    CHECK(bigraded_dimension(2, 1, 0) == 2);
    CHECK(bigraded_dimension(2, 1, 1) == 3);
    CHECK(bigraded_dimension(1, 1, 1) == 0);
    CHECK(bigraded_dimension(1, 3, 0) == 1);
    CHECK(bigraded_dimension(1, 0, 0) == 1);
    for (int n : {2, 3})
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) CHECK(bigraded_dimension(n, p, q) == expected_dim(n, p, q));
}

TEST_CASE("bigraded bases are orthonormal harmonic and seeded") {
    for (int n : {1, 2, 3})
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q) {
                const HarmonicBasis b = build_bigraded_basis(n, p, q);
                CAPTURE(n);
                CAPTURE(p);
                CAPTURE(q);
                CHECK(static_cast<int>(b.size()) == bigraded_dimension(n, p, q));
                CHECK(gram_defect(b.elements) < 1e-12);
                for (const auto& e : b.elements) {
                    CHECK(e.is_bihomogeneous(p, q));
                    CHECK(laplacian(e).max_abs_coeff() < 1e-11 * e.max_abs_coeff());
                }
                if (n >= 2) CHECK(b.elements.front().terms().size() == 1);
            }
    CHECK_THROWS_AS(build_bigraded_basis(5, 1, 1), std::invalid_argument);
}

TEST_CASE("real bases") {
    for (int d : {2, 3, 4})
        for (int k = 0; k <= 3; ++k) {
            const RealHarmonicBasis b = build_real_basis(d, k);
            CAPTURE(d);
            CAPTURE(k);
            const int expected = d == 2 ? (k == 0 ? 1 : 2)
                                        : static_cast<int>(std::lround(special::binomial(k + d - 1, d - 1) -
                                                                       (k >= 2 ? special::binomial(k + d - 3, d - 1) : 0.0)));
            CHECK(static_cast<int>(b.size()) == expected);
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    CHECK(std::abs(sphere_inner(b.elements[i], b.elements[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
            CHECK(b.elements.front().terms().size() == RealPoly::x1_plus_ix2_pow(d, k).terms().size());
        }
}

TEST_CASE("exact inner product agrees with quadrature") {
    const sphere::SphereRule rule = sphere::build_sphere_rule(4, 1.0, 12);
    const ComplexPoly a = ComplexPoly::z1p_zbar2q(2, 2, 1) + Complex(0.5, 1.0) * ComplexPoly::coordinate(2, 1, false);
    const ComplexPoly b = ComplexPoly::z1p_zbar2q(2, 1, 1) * ComplexPoly::coordinate(2, 0, false) +
                          ComplexPoly::coordinate(2, 1, false);
    const Complex quad = sphere::integrate(rule, [&](const ComplexPoint& w) { return a.eval(w) * std::conj(b.eval(w)); });
    CHECK(std::abs(sphere_inner(a, b) - quad) < 1e-14);
}

TEST_CASE("unitary action") {
    const double theta = 0.7;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
    u(0, 0) = std::polar(1.0, theta);
    const ComplexPoly z1 = ComplexPoly::coordinate(2, 0, false);
    const ComplexPoly moved = unitary_action(z1, u);
    CHECK(std::abs(moved.coefficient({1, 0, 0, 0}) - std::polar(1.0, -theta)) < 1e-15);

    // a generic unitary keeps H_{p,q} and the inner products
    Eigen::MatrixXcd g(2, 2);
    g << Complex(0.3, 0.4), Complex(-1.0, 0.2), Complex(0.5, -0.1), Complex(0.7, 0.9);
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    const HarmonicBasis b = build_bigraded_basis(2, 2, 1);
    std::vector<ComplexPoly> rotated;
    for (const auto& e : b.elements) {
        ComplexPoly r = unitary_action(e, q);
        CHECK(r.is_bihomogeneous(2, 1));
        CHECK(laplacian(r).max_abs_coeff() < 1e-11 * r.max_abs_coeff());
        rotated.push_back(std::move(r));
    }
    CHECK(gram_defect(rotated) < 1e-12);

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(unitary_action(z1, bad), std::invalid_argument);
}

TEST_CASE("harmonic coefficients round trip") {
    const HarmonicBasis b = build_bigraded_basis(2, 1, 1);
    const sphere::SphereRule rule = sphere::build_sphere_rule(4, 1.0, 12);
    const ComplexPoly& y1 = b.elements[1];
    const Field f = [&](const ComplexPoint& z) { return std::exp(-0.25 * z.norm_sq()) * y1.eval(z); };
    const std::vector<double> grid{0.5, 1.0, 2.5};
    const HarmonicCoefficients c = harmonic_coefficients(f, b, grid, rule);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double rho = grid[i];
        CHECK(std::abs(c.a_tilde[1][i] - std::exp(-0.25 * rho * rho)) < 1e-13);
        CHECK(std::abs(c.a[1][i] - rho * rho * std::exp(-0.25 * rho * rho)) < 1e-13);
        CHECK(std::abs(c.a[0][i]) < 1e-13);
        CHECK(std::abs(c.a[2][i]) < 1e-13);
    }
    CHECK_THROWS_AS(harmonic_coefficients(f, b, {0.0, 1.0}, rule), std::invalid_argument);
}

TEST_CASE("json export") {
    const nlohmann::json j = to_json(build_bigraded_basis(2, 1, 0));
    CHECK(j["dimension"] == 2);
    CHECK(j["elements"].size() == 2);
    CHECK(j["elements"][0][0].contains("alpha"));
    const nlohmann::json r = to_json(build_real_basis(3, 1));
    CHECK(r["elements"].size() == 3);
}
