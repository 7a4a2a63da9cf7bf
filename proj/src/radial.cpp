#include "twistmeans/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twistmeans/special_functions.hpp"

namespace twistmeans {

RadialProfile RadialProfile::laguerre_function(int k, int dim, Complex scale) {
    if (k < 0 || dim < 1) throw std::invalid_argument("laguerre_function: need k >= 0, dim >= 1");
    std::vector<Complex> c(k + 1, 0.0);
    c[k] = scale;
    return laguerre_series(dim, std::move(c));
}

RadialProfile RadialProfile::laguerre_series(int dim, std::vector<Complex> coeffs) {
    if (dim < 1) throw std::invalid_argument("laguerre_series: dim >= 1");
    RadialProfile p;
    p.kind_ = Kind::LaguerreSeries;
    p.dim_ = dim;
    p.coeffs_ = std::move(coeffs);
    return p;
}

RadialProfile RadialProfile::exp_power(std::vector<ExpPowerTerm> terms) {
    RadialProfile p;
    p.kind_ = Kind::ExpPower;
    p.terms_ = std::move(terms);
    return p;
}

RadialProfile RadialProfile::bessel(double lambda, int dim) {
    if (!(lambda > 0.0) || dim < 2) throw std::invalid_argument("bessel profile: need lambda > 0, dim >= 2");
    RadialProfile p;
    p.kind_ = Kind::Bessel;
    p.lambda_ = lambda;
    p.dim_ = dim;
    return p;
}

RadialProfile RadialProfile::sampled(std::vector<double> grid, std::vector<Complex> values, int order) {
    if (grid.size() != values.size() || grid.size() < 2) throw std::invalid_argument("sampled profile: bad samples");
    if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("sampled profile: grid not sorted");
    RadialProfile p;
    p.kind_ = Kind::Sampled;
    p.order_ = std::clamp(order, 2, static_cast<int>(grid.size()));
    p.grid_ = std::move(grid);
    p.values_ = std::move(values);
    return p;
}

RadialProfile RadialProfile::from_function(std::function<Complex(double)> f, std::function<Complex(double)> df) {
    RadialProfile p;
    p.kind_ = Kind::Function;
    p.fn_ = std::move(f);
    p.dfn_ = std::move(df);
    return p;
}

bool RadialProfile::has_derivative() const { return kind_ != Kind::Function || static_cast<bool>(dfn_); }

namespace {

Complex exp_power_eval(const std::vector<ExpPowerTerm>& terms, double rho) {
    Complex s = 0.0;
    for (const auto& t : terms) s += t.c * std::pow(rho, t.power) * std::exp(0.25 * t.sigma * rho * rho);
    return s;
}

Complex exp_power_deriv(const std::vector<ExpPowerTerm>& terms, double rho) {
    Complex s = 0.0;
    for (const auto& t : terms) {
        const double e = std::exp(0.25 * t.sigma * rho * rho);
        const double lead = t.power == 0.0 ? 0.0 : t.power * std::pow(rho, t.power - 1.0);
        s += t.c * (lead + 0.5 * t.sigma * std::pow(rho, t.power + 1.0)) * e;
    }
    return s;
}

// Index of the first of `order` consecutive grid points around x.
std::size_t stencil_start(const std::vector<double>& grid, double x, int order) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), x);
    const long pos = static_cast<long>(it - grid.begin());
    long start = pos - order / 2;
    start = std::clamp(start, 0L, static_cast<long>(grid.size()) - order);
    return static_cast<std::size_t>(start);
}

}  // namespace

Complex RadialProfile::operator()(double rho) const {
    switch (kind_) {
        case Kind::LaguerreSeries: {
            Complex s = 0.0;
            for (std::size_t k = 0; k < coeffs_.size(); ++k)
                if (coeffs_[k] != 0.0) s += coeffs_[k] * special::phi_eval({static_cast<int>(k), dim_}, rho);
            return s;
        }
        case Kind::ExpPower:
            return exp_power_eval(terms_, rho);
        case Kind::Bessel:
            return special::bessel_phi_eval({lambda_, dim_}, rho);
        case Kind::Sampled: {
            const std::size_t s = stencil_start(grid_, rho, order_);
            Complex acc = 0.0;
            for (int j = 0; j < order_; ++j) {
                double l = 1.0;
                for (int m = 0; m < order_; ++m)
                    if (m != j) l *= (rho - grid_[s + m]) / (grid_[s + j] - grid_[s + m]);
                acc += l * values_[s + j];
            }
            return acc;
        }
        case Kind::Function:
            return fn_(rho);
    }
    return 0.0;
}

Complex RadialProfile::derivative(double rho) const {
    switch (kind_) {
        case Kind::LaguerreSeries: {
            // d/drho [L(t) e^{-t/2}] = rho (L'(t) - L(t)/2) e^{-t/2}, t = rho^2/2
            const double t = 0.5 * rho * rho;
            const double alpha = dim_ - 1.0;
            Complex s = 0.0;
            for (std::size_t k = 0; k < coeffs_.size(); ++k) {
                if (coeffs_[k] == 0.0) continue;
                const special::LaguerreSpec spec{static_cast<int>(k), alpha};
                s += coeffs_[k] * rho *
                     (special::laguerre_deriv(spec, t) - 0.5 * special::laguerre_eval(spec, t)) * std::exp(-0.5 * t);
            }
            return s;
        }
        case Kind::ExpPower:
            return exp_power_deriv(terms_, rho);
        case Kind::Bessel:
            return special::bessel_phi_deriv({lambda_, dim_}, rho);
        case Kind::Sampled: {
            const std::size_t s = stencil_start(grid_, rho, order_);
            Complex acc = 0.0;
            for (int j = 0; j < order_; ++j) {
                // derivative of the j-th Lagrange basis polynomial
                double dl = 0.0;
                for (int i = 0; i < order_; ++i) {
                    if (i == j) continue;
                    double term = 1.0 / (grid_[s + j] - grid_[s + i]);
                    for (int m = 0; m < order_; ++m)
                        if (m != j && m != i) term *= (rho - grid_[s + m]) / (grid_[s + j] - grid_[s + m]);
                    dl += term;
                }
                acc += dl * values_[s + j];
            }
            return acc;
        }
        case Kind::Function:
            if (!dfn_) throw std::logic_error("RadialProfile: no derivative supplied for wrapped function");
            return dfn_(rho);
    }
    return 0.0;
}

std::optional<std::vector<ExpPowerTerm>> RadialProfile::as_exp_power() const {
    if (kind_ == Kind::ExpPower) return terms_;
    if (kind_ != Kind::LaguerreSeries) return std::nullopt;
    // phi_k^{a}(rho) = sum_i (-1)^i binom(k+a, k-i) (rho^2/2)^i / i! e^{-rho^2/4}
    const double alpha = dim_ - 1.0;
    std::vector<Complex> by_power;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0.0) continue;
        if (by_power.size() < k + 1) by_power.resize(k + 1, 0.0);
        double fact = 1.0;
        for (std::size_t i = 0; i <= k; ++i) {
            if (i > 0) fact *= 2.0 * static_cast<double>(i);
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            by_power[i] += coeffs_[k] * sign * special::binomial(static_cast<double>(k) + alpha, static_cast<int>(k - i)) / fact;
        }
    }
    std::vector<ExpPowerTerm> out;
    for (std::size_t i = 0; i < by_power.size(); ++i)
        if (by_power[i] != 0.0) out.push_back({by_power[i], 2.0 * static_cast<double>(i), -1.0});
    return out;
}

}  // namespace twistmeans
