#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistmeans/core.hpp"

namespace twistmeans {

/// Polynomial sum_{alpha,beta} c z^alpha zbar^beta on C^n. An exponent is
/// stored as 2n integers (alpha_1..alpha_n, beta_1..beta_n); terms are kept
/// in a map so iteration order is canonical.
class ComplexPoly {
public:
    using Exponent = std::vector<int>;

    explicit ComplexPoly(int n = 1);

    static ComplexPoly constant(int n, Complex c);
    static ComplexPoly monomial(int n, const Exponent& e, Complex c = 1.0);
    /// z_j (conj = false) or zbar_j (conj = true), 0-based j.
    static ComplexPoly coordinate(int n, int j, bool conj);
    /// z_1^p zbar_2^q (needs n >= 2 unless q = 0).
    static ComplexPoly z1p_zbar2q(int n, int p, int q);

    int dim() const { return n_; }
    const std::map<Exponent, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, Complex c);
    Complex coefficient(const Exponent& e) const;

    Complex eval(const ComplexPoint& z) const;

    ComplexPoly d_z(int j) const;
    ComplexPoly d_zbar(int j) const;
    /// conj(P(z)) as a polynomial: sum conj(c) z^beta zbar^alpha.
    ComplexPoly conjugate() const;

    /// True when every term has |alpha| = p and |beta| = q.
    bool is_bihomogeneous(int p, int q) const;
    /// Largest total degree, -1 for the zero polynomial.
    int degree() const;

    /// Drops terms with |c| <= tol * max|c|.
    void prune(double rel_tol);
    double max_abs_coeff() const;

    ComplexPoly& operator+=(const ComplexPoly& o);
    ComplexPoly& operator-=(const ComplexPoly& o);
    ComplexPoly& operator*=(Complex s);
    friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
    friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
    friend ComplexPoly operator*(Complex s, ComplexPoly a) { return a *= s; }
    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);

    std::string to_string() const;

private:
    int n_;
    int max_exp_ = 0;
    std::map<Exponent, Complex> terms_;
};

/// Polynomial sum c x^a on R^d with complex coefficients.
class RealPoly {
public:
    using Exponent = std::vector<int>;

    explicit RealPoly(int d = 1);

    static RealPoly constant(int d, Complex c);
    static RealPoly monomial(int d, const Exponent& e, Complex c = 1.0);
    static RealPoly coordinate(int d, int j);
    /// (x_1 + i x_2)^k.
    static RealPoly x1_plus_ix2_pow(int d, int k);

    int dim() const { return d_; }
    const std::map<Exponent, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, Complex c);
    Complex coefficient(const Exponent& e) const;
    Complex eval(const RealPoint& x) const;
    RealPoly d_x(int j) const;
    RealPoly conjugate() const;
    bool is_homogeneous(int k) const;
    int degree() const;
    void prune(double rel_tol);
    double max_abs_coeff() const;

    RealPoly& operator+=(const RealPoly& o);
    RealPoly& operator-=(const RealPoly& o);
    RealPoly& operator*=(Complex s);
    friend RealPoly operator+(RealPoly a, const RealPoly& b) { return a += b; }
    friend RealPoly operator-(RealPoly a, const RealPoly& b) { return a -= b; }
    friend RealPoly operator*(Complex s, RealPoly a) { return a *= s; }
    friend RealPoly operator*(const RealPoly& a, const RealPoly& b);

private:
    int d_;
    int max_exp_ = 0;
    std::map<Exponent, Complex> terms_;
};

/// All exponent vectors of length `len` with entries summing to `total`,
/// in graded-lexicographic (descending first entry) order.
std::vector<std::vector<int>> compositions(int len, int total);

}  // namespace twistmeans
