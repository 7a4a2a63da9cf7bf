#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "twistmeans/core.hpp"
#include "twistmeans/polynomial.hpp"
#include "twistmeans/radial.hpp"

namespace twistmeans {

namespace detail {

template <class Poly>
struct RadialGroup {
    double power;
    double sigma;
    Poly poly;
};

inline double norm_of(const ComplexPoint& z) { return z.norm(); }
inline double norm_of(const RealPoint& x) { return x.norm(); }

}  // namespace detail

/// f = sum_g rho^{e_g} e^{sigma_g rho^2/4} P_g, rho = |point|, P_g polynomials.
/// Closed under the coordinate derivatives and multiplication by coordinates,
/// so operators act exactly. Poly is ComplexPoly (z, zbar on C^n) or
/// RealPoly (x on R^d).
template <class Poly, class Point>
class StructuredT {
public:
    using Group = detail::RadialGroup<Poly>;

    explicit StructuredT(int dim) : dim_(dim) {}

    /// a(|z|) P(z) for a profile with an exp-power expansion.
    static StructuredT from(const RadialProfile& a, const Poly& p) {
        const auto terms = a.as_exp_power();
        if (!terms) throw std::invalid_argument("StructuredFunction: profile has no exp-power expansion");
        StructuredT f(p.dim());
        for (const auto& t : *terms) f.add(t.power, t.sigma, t.c * p);
        return f;
    }

    int dim() const { return dim_; }
    const std::vector<Group>& groups() const { return groups_; }

    void add(double power, double sigma, const Poly& p) {
        if (p.is_zero()) return;
        for (auto& g : groups_)
            if (g.power == power && g.sigma == sigma) {
                g.poly += p;
                return;
            }
        groups_.push_back({power, sigma, p});
    }

    Complex operator()(const Point& z) const {
        const double rho = detail::norm_of(z);
        Complex s = 0.0;
        for (const auto& g : groups_) {
            double radial = std::exp(0.25 * g.sigma * rho * rho);
            if (g.power != 0.0) radial *= std::pow(rho, g.power);
            s += radial * g.poly.eval(z);
        }
        return s;
    }

    StructuredT& operator+=(const StructuredT& o) {
        for (const auto& g : o.groups_) add(g.power, g.sigma, g.poly);
        return *this;
    }
    StructuredT& operator*=(Complex s) {
        for (auto& g : groups_) g.poly *= s;
        return *this;
    }
    friend StructuredT operator+(StructuredT a, const StructuredT& b) { return a += b; }
    friend StructuredT operator-(StructuredT a, StructuredT b) { return a += (b *= -1.0); }
    friend StructuredT operator*(Complex s, StructuredT a) { return a *= s; }

    /// Multiplication by a polynomial.
    StructuredT times(const Poly& p) const {
        StructuredT out(dim_);
        for (const auto& g : groups_) out.add(g.power, g.sigma, g.poly * p);
        return out;
    }

    /// d/dz_j (complex mode).
    StructuredT d_z(int j) const
        requires std::is_same_v<Poly, ComplexPoly>
    {
        return derivative(j, false);
    }
    /// d/dzbar_j (complex mode).
    StructuredT d_zbar(int j) const
        requires std::is_same_v<Poly, ComplexPoly>
    {
        return derivative(j, true);
    }
    /// d/dx_j (real mode).
    StructuredT d_x(int j) const
        requires std::is_same_v<Poly, RealPoly>
    {
        StructuredT out(dim_);
        const Poly xj = Poly::coordinate(dim_, j);
        for (const auto& g : groups_) {
            out.add(g.power, g.sigma, g.poly.d_x(j));
            // d/dx_j rho^e e^{s rho^2/4} = x_j (e rho^{e-2} + s/2 rho^e) e^{s rho^2/4}
            if (g.power != 0.0) out.add(g.power - 2.0, g.sigma, g.power * (xj * g.poly));
            if (g.sigma != 0.0) out.add(g.power, g.sigma, 0.5 * g.sigma * (xj * g.poly));
        }
        out.prune();
        return out;
    }

    void prune(double rel_tol = 0.0) {
        std::vector<Group> kept;
        for (auto& g : groups_) {
            if (rel_tol > 0.0) g.poly.prune(rel_tol);
            if (!g.poly.is_zero()) kept.push_back(std::move(g));
        }
        groups_ = std::move(kept);
    }

private:
    StructuredT derivative(int j, bool bar) const {
        StructuredT out(dim_);
        // d/dzbar_j rho = z_j / (2 rho); d/dz_j rho = zbar_j / (2 rho)
        const Poly coord = Poly::coordinate(dim_, j, !bar);
        for (const auto& g : groups_) {
            out.add(g.power, g.sigma, bar ? g.poly.d_zbar(j) : g.poly.d_z(j));
            if (g.power != 0.0) out.add(g.power - 2.0, g.sigma, (0.5 * g.power) * (coord * g.poly));
            if (g.sigma != 0.0) out.add(g.power, g.sigma, (0.25 * g.sigma) * (coord * g.poly));
        }
        out.prune();
        return out;
    }

    int dim_;
    std::vector<Group> groups_;
};

/// Structured function on C^n in the coordinates z, zbar.
using StructuredFunction = StructuredT<ComplexPoly, ComplexPoint>;
/// Structured function on R^d.
using RealStructuredFunction = StructuredT<RealPoly, RealPoint>;

}  // namespace twistmeans
