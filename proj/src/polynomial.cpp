#include "twistmeans/polynomial.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twistmeans {

namespace {

void compose(int len, int left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    const int pos = static_cast<int>(cur.size());
    if (pos == len - 1) {
        cur.push_back(left);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = left; e >= 0; --e) {
        cur.push_back(e);
        compose(len, left - e, cur, out);
        cur.pop_back();
    }
}

int max_entry(const std::vector<int>& e) { return e.empty() ? 0 : *std::max_element(e.begin(), e.end()); }

template <class Map>
void add_to(Map& terms, const std::vector<int>& e, Complex c, int& max_exp) {
    if (c == 0.0) return;
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms.erase(it);
    }
    max_exp = std::max(max_exp, max_entry(e));
}

template <class Map>
void prune_map(Map& terms, double rel_tol) {
    double m = 0.0;
    for (const auto& [e, c] : terms) m = std::max(m, std::abs(c));
    for (auto it = terms.begin(); it != terms.end();) {
        if (std::abs(it->second) <= rel_tol * m)
            it = terms.erase(it);
        else
            ++it;
    }
}

}  // namespace

std::vector<std::vector<int>> compositions(int len, int total) {
    std::vector<std::vector<int>> out;
    if (len <= 0 || total < 0) return out;
    std::vector<int> cur;
    compose(len, total, cur, out);
    return out;
}

// ---------------------------------------------------------------- ComplexPoly

ComplexPoly::ComplexPoly(int n) : n_(n) {
    if (n < 1 || n > kMaxComplexDim) throw std::invalid_argument("ComplexPoly: dimension out of range");
}

ComplexPoly ComplexPoly::constant(int n, Complex c) {
    ComplexPoly p(n);
    p.add_term(Exponent(2 * n, 0), c);
    return p;
}

ComplexPoly ComplexPoly::monomial(int n, const Exponent& e, Complex c) {
    ComplexPoly p(n);
    p.add_term(e, c);
    return p;
}

ComplexPoly ComplexPoly::coordinate(int n, int j, bool conj) {
    Exponent e(2 * n, 0);
    e[conj ? n + j : j] = 1;
    return monomial(n, e);
}

ComplexPoly ComplexPoly::z1p_zbar2q(int n, int p, int q) {
    if (q > 0 && n < 2) throw std::invalid_argument("z1p_zbar2q: zbar_2 needs n >= 2");
    Exponent e(2 * n, 0);
    e[0] = p;
    if (q > 0) e[n + 1] = q;
    return monomial(n, e);
}

void ComplexPoly::add_term(const Exponent& e, Complex c) {
    if (static_cast<int>(e.size()) != 2 * n_) throw std::invalid_argument("ComplexPoly: exponent length mismatch");
    add_to(terms_, e, c, max_exp_);
}

Complex ComplexPoly::coefficient(const Exponent& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex ComplexPoly::eval(const ComplexPoint& z) const {
    if (terms_.empty()) return 0.0;
    // powers[v][k] for v over the 2n variables z_1..z_n, zbar_1..zbar_n
    constexpr int kMaxPow = 24;
    if (max_exp_ > kMaxPow) throw std::invalid_argument("ComplexPoly::eval: degree too large");
    std::array<std::array<Complex, kMaxPow + 1>, 2 * kMaxComplexDim> pw;
    for (int v = 0; v < 2 * n_; ++v) {
        const Complex base = v < n_ ? z[v] : std::conj(z[v - n_]);
        pw[v][0] = 1.0;
        for (int k = 1; k <= max_exp_; ++k) pw[v][k] = pw[v][k - 1] * base;
    }
    Complex s = 0.0;
    for (const auto& [e, c] : terms_) {
        Complex t = c;
        for (int v = 0; v < 2 * n_; ++v)
            if (e[v] != 0) t *= pw[v][e[v]];
        s += t;
    }
    return s;
}

ComplexPoly ComplexPoly::d_z(int j) const {
    ComplexPoly out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[j] == 0) continue;
        Exponent f = e;
        f[j] -= 1;
        out.add_term(f, c * static_cast<double>(e[j]));
    }
    return out;
}

ComplexPoly ComplexPoly::d_zbar(int j) const {
    ComplexPoly out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[n_ + j] == 0) continue;
        Exponent f = e;
        f[n_ + j] -= 1;
        out.add_term(f, c * static_cast<double>(e[n_ + j]));
    }
    return out;
}

ComplexPoly ComplexPoly::conjugate() const {
    ComplexPoly out(n_);
    for (const auto& [e, c] : terms_) {
        Exponent f(2 * n_);
        for (int j = 0; j < n_; ++j) {
            f[j] = e[n_ + j];
            f[n_ + j] = e[j];
        }
        out.add_term(f, std::conj(c));
    }
    return out;
}

bool ComplexPoly::is_bihomogeneous(int p, int q) const {
    for (const auto& [e, c] : terms_) {
        const int a = std::accumulate(e.begin(), e.begin() + n_, 0);
        const int b = std::accumulate(e.begin() + n_, e.end(), 0);
        if (a != p || b != q) return false;
    }
    return true;
}

int ComplexPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void ComplexPoly::prune(double rel_tol) { prune_map(terms_, rel_tol); }

double ComplexPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& o) {
    if (o.n_ != n_) throw std::invalid_argument("ComplexPoly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& o) {
    if (o.n_ != n_) throw std::invalid_argument("ComplexPoly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

ComplexPoly& ComplexPoly::operator*=(Complex s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("ComplexPoly: dimension mismatch");
    ComplexPoly out(a.n_);
    ComplexPoly::Exponent f(2 * a.n_);
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) {
            for (int v = 0; v < 2 * a.n_; ++v) f[v] = e1[v] + e2[v];
            out.add_term(f, c1 * c2);
        }
    return out;
}

std::string ComplexPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        for (int j = 0; j < n_; ++j)
            if (e[j]) os << " z" << j + 1 << (e[j] > 1 ? "^" + std::to_string(e[j]) : "");
        for (int j = 0; j < n_; ++j)
            if (e[n_ + j]) os << " zb" << j + 1 << (e[n_ + j] > 1 ? "^" + std::to_string(e[n_ + j]) : "");
    }
    return os.str();
}

// ------------------------------------------------------------------- RealPoly

RealPoly::RealPoly(int d) : d_(d) {
    if (d < 1 || d > kMaxRealDim) throw std::invalid_argument("RealPoly: dimension out of range");
}

RealPoly RealPoly::constant(int d, Complex c) {
    RealPoly p(d);
    p.add_term(Exponent(d, 0), c);
    return p;
}

RealPoly RealPoly::monomial(int d, const Exponent& e, Complex c) {
    RealPoly p(d);
    p.add_term(e, c);
    return p;
}

RealPoly RealPoly::coordinate(int d, int j) {
    Exponent e(d, 0);
    e[j] = 1;
    return monomial(d, e);
}

RealPoly RealPoly::x1_plus_ix2_pow(int d, int k) {
    if (d < 2) throw std::invalid_argument("x1_plus_ix2_pow: needs d >= 2");
    const RealPoly z = coordinate(d, 0) + Complex(0.0, 1.0) * coordinate(d, 1);
    RealPoly out = constant(d, 1.0);
    for (int i = 0; i < k; ++i) out = out * z;
    return out;
}

void RealPoly::add_term(const Exponent& e, Complex c) {
    if (static_cast<int>(e.size()) != d_) throw std::invalid_argument("RealPoly: exponent length mismatch");
    add_to(terms_, e, c, max_exp_);
}

Complex RealPoly::coefficient(const Exponent& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex RealPoly::eval(const RealPoint& x) const {
    if (terms_.empty()) return 0.0;
    constexpr int kMaxPow = 24;
    if (max_exp_ > kMaxPow) throw std::invalid_argument("RealPoly::eval: degree too large");
    std::array<std::array<double, kMaxPow + 1>, kMaxRealDim> pw;
    for (int v = 0; v < d_; ++v) {
        pw[v][0] = 1.0;
        for (int k = 1; k <= max_exp_; ++k) pw[v][k] = pw[v][k - 1] * x[v];
    }
    Complex s = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = 1.0;
        for (int v = 0; v < d_; ++v)
            if (e[v] != 0) t *= pw[v][e[v]];
        s += c * t;
    }
    return s;
}

RealPoly RealPoly::d_x(int j) const {
    RealPoly out(d_);
    for (const auto& [e, c] : terms_) {
        if (e[j] == 0) continue;
        Exponent f = e;
        f[j] -= 1;
        out.add_term(f, c * static_cast<double>(e[j]));
    }
    return out;
}

RealPoly RealPoly::conjugate() const {
    RealPoly out(d_);
    for (const auto& [e, c] : terms_) out.add_term(e, std::conj(c));
    return out;
}

bool RealPoly::is_homogeneous(int k) const {
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) != k) return false;
    return true;
}

int RealPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void RealPoly::prune(double rel_tol) { prune_map(terms_, rel_tol); }

double RealPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

RealPoly& RealPoly::operator+=(const RealPoly& o) {
    if (o.d_ != d_) throw std::invalid_argument("RealPoly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

RealPoly& RealPoly::operator-=(const RealPoly& o) {
    if (o.d_ != d_) throw std::invalid_argument("RealPoly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

RealPoly& RealPoly::operator*=(Complex s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
    if (a.d_ != b.d_) throw std::invalid_argument("RealPoly: dimension mismatch");
    RealPoly out(a.d_);
    RealPoly::Exponent f(a.d_);
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) {
            for (int v = 0; v < a.d_; ++v) f[v] = e1[v] + e2[v];
            out.add_term(f, c1 * c2);
        }
    return out;
}

}  // namespace twistmeans
