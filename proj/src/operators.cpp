#include "twistmeans/operators.hpp"

#include <algorithm>
#include <stdexcept>

#include "twistmeans/special_functions.hpp"

namespace twistmeans::operators {

namespace {

StructuredFunction apply_once(Kind kind, int j, const StructuredFunction& f) {
    const int n = f.dim();
    if (j < 0 || j >= n) throw std::invalid_argument("apply: coordinate index out of range");
    const ComplexPoly z = ComplexPoly::coordinate(n, j, false);
    const ComplexPoly zb = ComplexPoly::coordinate(n, j, true);
    switch (kind) {
        case Kind::A: return f.d_z(j) + f.times(0.25 * zb);
        case Kind::Z: return f.d_z(j) - f.times(0.25 * zb);
        case Kind::As: return f.d_zbar(j) - f.times(0.25 * z);
        case Kind::Zs: return f.d_zbar(j) + f.times(0.25 * z);
        default: throw std::invalid_argument("apply: operator kind not defined on complex structured functions");
    }
}

// 4th-order central difference of g along coordinate direction e at x,
// Richardson-combined across h and h/2.
template <class Point, class G>
Complex directional(const G& g, const Point& x, const Point& e, double h) {
    auto d4 = [&](double s) {
        return (-g(x + (2 * s) * e) + 8.0 * g(x + s * e) - 8.0 * g(x - s * e) + g(x - (2 * s) * e)) / (12.0 * s);
    };
    const Complex coarse = d4(h);
    const Complex fine = d4(0.5 * h);
    return (16.0 * fine - coarse) / 15.0;
}

double step_for(double coordinate, const FiniteDifference& fd) { return fd.h * std::max(1.0, std::abs(coordinate)); }

// d/dz_j (bar = false) or d/dzbar_j (bar = true) of a black-box field.
Complex wirtinger(const Field& f, const ComplexPoint& z, int j, bool bar, const FiniteDifference& fd) {
    ComplexPoint ex(z.dim()), ey(z.dim());
    ex[j] = 1.0;
    ey[j] = Complex(0.0, 1.0);
    const double h = step_for(std::abs(z[j]), fd);
    const Complex dx = directional(f, z, ex, h);
    const Complex dy = directional(f, z, ey, h);
    const Complex i(0.0, 1.0);
    return bar ? 0.5 * (dx + i * dy) : 0.5 * (dx - i * dy);
}

Field apply_once(Kind kind, int j, Field f, FiniteDifference fd) {
    switch (kind) {
        case Kind::A:
            return [f, j, fd](const ComplexPoint& z) { return wirtinger(f, z, j, false, fd) + 0.25 * std::conj(z[j]) * f(z); };
        case Kind::Z:
            return [f, j, fd](const ComplexPoint& z) { return wirtinger(f, z, j, false, fd) - 0.25 * std::conj(z[j]) * f(z); };
        case Kind::As:
            return [f, j, fd](const ComplexPoint& z) { return wirtinger(f, z, j, true, fd) - 0.25 * z[j] * f(z); };
        case Kind::Zs:
            return [f, j, fd](const ComplexPoint& z) { return wirtinger(f, z, j, true, fd) + 0.25 * z[j] * f(z); };
        default: throw std::invalid_argument("apply: operator kind not defined on complex fields");
    }
}

RealField dbar_once(RealField f, FiniteDifference fd) {
    return [f, fd](const RealPoint& x) {
        RealPoint e1(x.dim()), e2(x.dim());
        e1[0] = 1.0;
        e2[1] = 1.0;
        const double h = step_for(std::max(std::abs(x[0]), std::abs(x[1])), fd);
        return directional(f, x, e1, h) + Complex(0.0, 1.0) * directional(f, x, e2, h);
    };
}

void check_power(int power) {
    if (power < 0) throw std::invalid_argument("apply: power must be >= 0");
}

}  // namespace

StructuredFunction apply(const OperatorSpec& op, const StructuredFunction& f) {
    check_power(op.power);
    StructuredFunction g = f;
    for (int i = 0; i < op.power; ++i) g = apply_once(op.kind, op.j, g);
    return g;
}

RealStructuredFunction apply(const OperatorSpec& op, const RealStructuredFunction& f) {
    if (op.kind != Kind::Dbar) throw std::invalid_argument("apply: only Dbar acts on real structured functions");
    return euclid_dbar(f, op.power);
}

Field apply(const OperatorSpec& op, Field f, FiniteDifference fd) {
    check_power(op.power);
    for (int i = 0; i < op.power; ++i) f = apply_once(op.kind, op.j, std::move(f), fd);
    return f;
}

RealField apply(const OperatorSpec& op, RealField f, FiniteDifference fd) {
    if (op.kind != Kind::Dbar) throw std::invalid_argument("apply: only Dbar acts on real fields");
    return euclid_dbar(f, op.power, fd);
}

StructuredFunction monomial_weyl(int p, int q, Kind kind, const StructuredFunction& f) {
    if (kind != Kind::A && kind != Kind::Z) throw std::invalid_argument("monomial_weyl: kind must be A or Z");
    if (q > 0 && f.dim() < 2) throw std::invalid_argument("monomial_weyl: q > 0 needs n >= 2");
    const Kind star = kind == Kind::A ? Kind::As : Kind::Zs;
    StructuredFunction g = apply({kind, 1, q}, f);
    return apply({star, 0, p}, g);
}

Field monomial_weyl(int p, int q, Kind kind, const Field& f, FiniteDifference fd) {
    if (kind != Kind::A && kind != Kind::Z) throw std::invalid_argument("monomial_weyl: kind must be A or Z");
    const Kind star = kind == Kind::A ? Kind::As : Kind::Zs;
    Field g = apply({kind, 1, q}, f, fd);
    return apply({star, 0, p}, std::move(g), fd);
}

double radial_ladder(Kind kind, int k, int m, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("radial_ladder: rho must be positive");
    if (kind != Kind::D && kind != Kind::Ds) throw std::invalid_argument("radial_ladder: kind must be D or Ds");
    // phi = L(t) e^{-t/2}, t = rho^2/2: (1/rho) d/drho phi = (L'(t) - L(t)/2) e^{-t/2}
    const double t = 0.5 * rho * rho;
    const special::LaguerreSpec spec{k, m - 1.0};
    const double l = special::laguerre_eval(spec, t);
    const double dl = special::laguerre_deriv(spec, t);
    const double shift = kind == Kind::D ? -0.5 : 0.5;  // (1/rho)(-/+ rho/2) phi = -/+ phi/2
    return (dl - 0.5 * l + shift * l) * std::exp(-0.5 * t);
}

RadialProfile radial_ladder(Kind kind, const RadialProfile& a) {
    if (kind != Kind::D && kind != Kind::Ds) throw std::invalid_argument("radial_ladder: kind must be D or Ds");
    const auto terms = a.as_exp_power();
    if (!terms) throw std::invalid_argument("radial_ladder: profile has no exp-power expansion");
    const double shift = kind == Kind::D ? -0.5 : 0.5;
    std::vector<ExpPowerTerm> out;
    // (1/rho) d/drho rho^e e^{s rho^2/4} = (e rho^{e-2} + s/2 rho^e) e^{s rho^2/4}
    for (const auto& t : *terms) {
        if (t.power != 0.0) out.push_back({t.c * t.power, t.power - 2.0, t.sigma});
        const double lin = 0.5 * t.sigma + shift;
        if (lin != 0.0) out.push_back({t.c * lin, t.power, t.sigma});
    }
    return RadialProfile::exp_power(std::move(out));
}

std::vector<double> radial_ladder_coefficients(int p, int q, int k) {
    std::vector<double> c(k + 1, 0.0);
    c[k] = 1.0;
    for (int s = 0; s < q; ++s) {
        std::vector<double> next(c.size(), 0.0);
        for (std::size_t j = 1; j < c.size(); ++j) next[j - 1] = -c[j];
        c = std::move(next);
    }
    for (int s = 0; s < p; ++s)
        for (double& v : c) v = -v;
    return c;
}

RealStructuredFunction euclid_dbar(const RealStructuredFunction& f, int k) {
    if (f.dim() < 2) throw std::invalid_argument("euclid_dbar: needs d >= 2");
    RealStructuredFunction g = f;
    for (int i = 0; i < k; ++i) g = g.d_x(0) + Complex(0.0, 1.0) * g.d_x(1);
    return g;
}

RealField euclid_dbar(const RealField& f, int k, FiniteDifference fd) {
    RealField g = f;
    for (int i = 0; i < k; ++i) g = dbar_once(std::move(g), fd);
    return g;
}

}  // namespace twistmeans::operators
