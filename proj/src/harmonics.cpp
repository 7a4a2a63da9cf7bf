#include "twistmeans/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "twistmeans/quadrature.hpp"
#include "twistmeans/rational.hpp"

namespace twistmeans::harmonics {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Basis of the null space of m (rows x cols) in exact arithmetic.
std::vector<std::vector<Rational>> exact_kernel(RationalMatrix m, int cols) {
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        const Rational inv = Rational(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const Rational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> kernel;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = Rational(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][f];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

// Exact int z^a zbar^b dmu over S^{2n-1}: delta_{ab} (n-1)! a! / (n-1+|a|)!.
double complex_moment(int n, const std::vector<int>& a, const std::vector<int>& b) {
    if (a != b) return 0.0;
    double lg = std::lgamma(static_cast<double>(n));
    int total = 0;
    for (int x : a) {
        lg += std::lgamma(x + 1.0);
        total += x;
    }
    return std::exp(lg - std::lgamma(static_cast<double>(n + total)));
}

// Gram-Schmidt with re-orthogonalization; returns residual ratios.
template <class Poly>
std::vector<Poly> orthonormalize(const std::vector<Poly>& input, std::vector<double>* ratios) {
    std::vector<Poly> out;
    for (const Poly& v : input) {
        const double norm0 = std::sqrt(std::abs(sphere_inner(v, v)));
        Poly r = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const Poly& e : out) r -= sphere_inner(r, e) * e;
        const double norm = std::sqrt(std::abs(sphere_inner(r, r)));
        if (ratios) ratios->push_back(norm / norm0);
        r *= 1.0 / norm;
        r.prune(1e-15);
        out.push_back(std::move(r));
    }
    return out;
}

// Orthonormalizes seed + kernel vectors, dropping the one kernel vector made
// dependent by the seed (the one with the smallest residual).
template <class Poly>
std::vector<Poly> seeded_basis(const std::vector<Poly>& kernel, const Poly* seed) {
    if (!seed) return orthonormalize(kernel, nullptr);
    std::vector<Poly> candidates{*seed};
    candidates.insert(candidates.end(), kernel.begin(), kernel.end());
    std::vector<double> ratios;
    orthonormalize(candidates, &ratios);
    const auto drop = std::min_element(ratios.begin() + 1, ratios.end()) - ratios.begin();
    candidates.erase(candidates.begin() + drop);
    return orthonormalize(candidates, nullptr);
}

}  // namespace

ComplexPoly laplacian(const ComplexPoly& poly) {
    const int n = poly.dim();
    ComplexPoly out(n);
    for (const auto& [e, c] : poly.terms())
        for (int i = 0; i < n; ++i) {
            if (e[i] == 0 || e[n + i] == 0) continue;
            ComplexPoly::Exponent f = e;
            f[i] -= 1;
            f[n + i] -= 1;
            out.add_term(f, 4.0 * c * static_cast<double>(e[i] * e[n + i]));
        }
    return out;
}

RealPoly laplacian(const RealPoly& poly) {
    const int d = poly.dim();
    RealPoly out(d);
    for (const auto& [e, c] : poly.terms())
        for (int i = 0; i < d; ++i) {
            if (e[i] < 2) continue;
            RealPoly::Exponent f = e;
            f[i] -= 2;
            out.add_term(f, c * static_cast<double>(e[i] * (e[i] - 1)));
        }
    return out;
}

Complex sphere_inner(const ComplexPoly& a, const ComplexPoly& b) {
    const int n = a.dim();
    Complex s = 0.0;
    std::vector<int> za(n), zb(n);
    for (const auto& [e1, c1] : a.terms())
        for (const auto& [e2, c2] : b.terms()) {
            // z^{alpha} zbar^{beta} conj(z^{gamma} zbar^{delta}) = z^{alpha+delta} zbar^{beta+gamma}
            for (int j = 0; j < n; ++j) {
                za[j] = e1[j] + e2[n + j];
                zb[j] = e1[n + j] + e2[j];
            }
            const double m = complex_moment(n, za, zb);
            if (m != 0.0) s += c1 * std::conj(c2) * m;
        }
    return s;
}

Complex sphere_inner(const RealPoly& a, const RealPoly& b) {
    const int d = a.dim();
    Complex s = 0.0;
    std::vector<int> e(d);
    for (const auto& [e1, c1] : a.terms())
        for (const auto& [e2, c2] : b.terms()) {
            for (int j = 0; j < d; ++j) e[j] = e1[j] + e2[j];
            const double m = sphere::monomial_moment(e);
            if (m != 0.0) s += c1 * std::conj(c2) * m;
        }
    return s;
}

namespace {

std::vector<std::vector<Rational>> bigraded_kernel(int n, int p, int q, std::vector<ComplexPoly::Exponent>& monomials) {
    if (n < 1 || n > kMaxComplexDim || p < 0 || q < 0)
        throw std::invalid_argument("build_bigraded_basis: need 1 <= n <= 4 and p, q >= 0");
    const auto src_a = compositions(n, p);
    const auto src_b = compositions(n, q);
    monomials.clear();
    for (const auto& a : src_a)
        for (const auto& b : src_b) {
            ComplexPoly::Exponent e(a);
            e.insert(e.end(), b.begin(), b.end());
            monomials.push_back(std::move(e));
        }
    const int cols = static_cast<int>(monomials.size());

    std::vector<std::vector<Rational>> kernel;
    if (p == 0 || q == 0) {
        for (int c = 0; c < cols; ++c) {
            std::vector<Rational> v(cols, Rational(0));
            v[c] = Rational(1);
            kernel.push_back(std::move(v));
        }
    } else {
        const auto dst_a = compositions(n, p - 1);
        const auto dst_b = compositions(n, q - 1);
        RationalMatrix m(dst_a.size() * dst_b.size(), std::vector<Rational>(cols, Rational(0)));
        for (int c = 0; c < cols; ++c) {
            const auto& e = monomials[c];
            for (int i = 0; i < n; ++i) {
                if (e[i] == 0 || e[n + i] == 0) continue;
                std::vector<int> a2(e.begin(), e.begin() + n), b2(e.begin() + n, e.end());
                a2[i] -= 1;
                b2[i] -= 1;
                const auto ia = std::find(dst_a.begin(), dst_a.end(), a2) - dst_a.begin();
                const auto ib = std::find(dst_b.begin(), dst_b.end(), b2) - dst_b.begin();
                m[ia * dst_b.size() + ib][c] += Rational(4 * e[i] * e[n + i]);
            }
        }
        kernel = exact_kernel(std::move(m), cols);
    }
    return kernel;
}

}  // namespace

int bigraded_dimension(int n, int p, int q) {
    std::vector<ComplexPoly::Exponent> monomials;
    return static_cast<int>(bigraded_kernel(n, p, q, monomials).size());
}

HarmonicBasis build_bigraded_basis(int n, int p, int q) {
    std::vector<ComplexPoly::Exponent> monomials;
    const auto kernel = bigraded_kernel(n, p, q, monomials);
    const int cols = static_cast<int>(monomials.size());

    std::vector<ComplexPoly> kernel_polys;
    for (const auto& v : kernel) {
        ComplexPoly poly(n);
        for (int c = 0; c < cols; ++c)
            if (!v[c].is_zero()) poly.add_term(monomials[c], v[c].to_double());
        kernel_polys.push_back(std::move(poly));
    }

    HarmonicBasis basis{n, p, q, {}};
    if (kernel_polys.empty()) return basis;
    if (n >= 2) {
        const ComplexPoly seed = ComplexPoly::z1p_zbar2q(n, p, q);
        basis.elements = seeded_basis(kernel_polys, &seed);
    } else {
        basis.elements = seeded_basis<ComplexPoly>(kernel_polys, nullptr);
    }
    return basis;
}

RealHarmonicBasis build_real_basis(int dim, int k) {
    if (dim < 2 || dim > kMaxRealDim || k < 0) throw std::invalid_argument("build_real_basis: need 2 <= dim <= 8, k >= 0");
    const auto monomials = compositions(dim, k);
    const int cols = static_cast<int>(monomials.size());
    std::vector<std::vector<Rational>> kernel;
    if (k < 2) {
        for (int c = 0; c < cols; ++c) {
            std::vector<Rational> v(cols, Rational(0));
            v[c] = Rational(1);
            kernel.push_back(std::move(v));
        }
    } else {
        const auto dst = compositions(dim, k - 2);
        RationalMatrix m(dst.size(), std::vector<Rational>(cols, Rational(0)));
        for (int c = 0; c < cols; ++c) {
            const auto& e = monomials[c];
            for (int i = 0; i < dim; ++i) {
                if (e[i] < 2) continue;
                auto f = e;
                f[i] -= 2;
                const auto row = std::find(dst.begin(), dst.end(), f) - dst.begin();
                m[row][c] += Rational(e[i] * (e[i] - 1));
            }
        }
        kernel = exact_kernel(std::move(m), cols);
    }
    std::vector<RealPoly> kernel_polys;
    for (const auto& v : kernel) {
        RealPoly poly(dim);
        for (int c = 0; c < cols; ++c)
            if (!v[c].is_zero()) poly.add_term(monomials[c], v[c].to_double());
        kernel_polys.push_back(std::move(poly));
    }
    const RealPoly seed = RealPoly::x1_plus_ix2_pow(dim, k);
    return RealHarmonicBasis{dim, k, seeded_basis(kernel_polys, &seed)};
}

ComplexPoly unitary_action(const ComplexPoly& poly, const Eigen::MatrixXcd& u) {
    const int n = poly.dim();
    if (u.rows() != n || u.cols() != n) throw std::invalid_argument("unitary_action: matrix size mismatch");
    const Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n);
    if (defect.cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("unitary_action: matrix is not unitary");
    const Eigen::MatrixXcd v = u.adjoint();  // U^{-1}

    // (U^{-1} z)_i and its conjugate as linear polynomials
    std::vector<ComplexPoly> lin, lin_bar;
    for (int i = 0; i < n; ++i) {
        ComplexPoly l(n), lb(n);
        for (int j = 0; j < n; ++j) {
            l += v(i, j) * ComplexPoly::coordinate(n, j, false);
            lb += std::conj(v(i, j)) * ComplexPoly::coordinate(n, j, true);
        }
        lin.push_back(std::move(l));
        lin_bar.push_back(std::move(lb));
    }
    ComplexPoly out(n);
    for (const auto& [e, c] : poly.terms()) {
        ComplexPoly t = ComplexPoly::constant(n, c);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < e[i]; ++k) t = t * lin[i];
            for (int k = 0; k < e[n + i]; ++k) t = t * lin_bar[i];
        }
        out += t;
    }
    out.prune(1e-15);
    return out;
}

HarmonicCoefficients harmonic_coefficients(const Field& f, const HarmonicBasis& basis,
                                           const std::vector<double>& rho_grid, const sphere::SphereRule& unit_rule) {
    const int deg = basis.p + basis.q;
    for (double r : rho_grid) {
        if (r < 0.0) throw std::invalid_argument("harmonic_coefficients: negative radius");
        if (r == 0.0 && deg > 0)
            throw std::invalid_argument("harmonic_coefficients: a_tilde is undefined at rho = 0 for p + q > 0");
    }
    if (unit_rule.real_dim() != 2 * basis.n) throw std::invalid_argument("harmonic_coefficients: rule dimension");

    const std::size_t m = unit_rule.size();
    // conj(Y_j) at the nodes, shared by all radii
    std::vector<std::vector<Complex>> ybar(basis.size(), std::vector<Complex>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const ComplexPoint w = unit_rule.complex_node(i);
        for (std::size_t j = 0; j < basis.size(); ++j) ybar[j][i] = std::conj(basis.elements[j].eval(w));
    }

    HarmonicCoefficients out;
    out.rho = rho_grid;
    out.a.assign(basis.size(), {});
    out.a_tilde.assign(basis.size(), {});
    std::vector<Complex> fv(m), prod(m);
    for (double r : rho_grid) {
        for (std::size_t i = 0; i < m; ++i) fv[i] = unit_rule.weight(i) * f(r * unit_rule.complex_node(i));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            for (std::size_t i = 0; i < m; ++i) prod[i] = fv[i] * ybar[j][i];
            const Complex a = quadrature::pairwise_sum(prod);
            out.a[j].push_back(a);
            out.a_tilde[j].push_back(deg == 0 ? a : a / std::pow(r, deg));
        }
    }
    return out;
}

nlohmann::json to_json(const ComplexPoly& poly) {
    const int n = poly.dim();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : poly.terms()) {
        terms.push_back({{"alpha", std::vector<int>(e.begin(), e.begin() + n)},
                         {"beta", std::vector<int>(e.begin() + n, e.end())},
                         {"re", c.real()},
                         {"im", c.imag()}});
    }
    return terms;
}

nlohmann::json to_json(const HarmonicBasis& basis) {
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& p : basis.elements) elems.push_back(to_json(p));
    return {{"kind", "bigraded"},
            {"n", basis.n},
            {"p", basis.p},
            {"q", basis.q},
            {"dimension", basis.size()},
            {"normalization", "L2(S^{2n-1}, normalized surface measure)"},
            {"elements", elems}};
}

nlohmann::json to_json(const RealHarmonicBasis& basis) {
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& p : basis.elements) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [e, c] : p.terms()) terms.push_back({{"exponent", e}, {"re", c.real()}, {"im", c.imag()}});
        elems.push_back(terms);
    }
    return {{"kind", "euclidean"},
            {"dim", basis.dim},
            {"k", basis.k},
            {"dimension", basis.size()},
            {"normalization", "L2(S^{d-1}, normalized surface measure)"},
            {"elements", elems}};
}

}  // namespace twistmeans::harmonics
