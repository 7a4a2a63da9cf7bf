#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "twistmeans/core.hpp"

namespace twistmeans {

/// c rho^power e^{sigma rho^2 / 4}
struct ExpPowerTerm {
    Complex c = 1.0;
    double power = 0.0;
    double sigma = 0.0;
};

/// A radial function a(rho) on [0, rho_max]. Closed forms (Laguerre series,
/// exp-power sums, Bessel) carry analytic derivatives; sampled profiles use
/// local Lagrange interpolation; wrapped functions may supply a derivative.
class RadialProfile {
public:
    enum class Kind { LaguerreSeries, ExpPower, Bessel, Sampled, Function };

    /// phi_k^{dim-1}(rho) = L_k^{dim-1}(rho^2/2) e^{-rho^2/4}
    static RadialProfile laguerre_function(int k, int dim, Complex scale = 1.0);
    /// sum_k coeffs[k] phi_k^{dim-1}(rho)
    static RadialProfile laguerre_series(int dim, std::vector<Complex> coeffs);
    static RadialProfile exp_power(std::vector<ExpPowerTerm> terms);
    /// Normalized radial Bessel eigenfunction on R^dim (value 1 at 0).
    static RadialProfile bessel(double lambda, int dim);
    /// Samples on an increasing grid; `order` points per local interpolant.
    static RadialProfile sampled(std::vector<double> grid, std::vector<Complex> values, int order = 6);
    static RadialProfile from_function(std::function<Complex(double)> f,
                                       std::function<Complex(double)> df = nullptr);

    Kind kind() const { return kind_; }
    Complex operator()(double rho) const;
    /// d/drho. Throws std::logic_error for wrapped functions without derivative.
    Complex derivative(double rho) const;
    bool has_derivative() const;

    int dim() const { return dim_; }
    const std::vector<Complex>& laguerre_coeffs() const { return coeffs_; }
    double lambda() const { return lambda_; }

    /// The profile as a finite sum of exp-power terms, when it is one
    /// (Laguerre series and exp-power kinds).
    std::optional<std::vector<ExpPowerTerm>> as_exp_power() const;

private:
    Kind kind_ = Kind::ExpPower;
    int dim_ = 1;
    double lambda_ = 1.0;
    int order_ = 6;
    std::vector<Complex> coeffs_;
    std::vector<ExpPowerTerm> terms_;
    std::vector<double> grid_;
    std::vector<Complex> values_;
    std::function<Complex(double)> fn_;
    std::function<Complex(double)> dfn_;
};

}  // namespace twistmeans
