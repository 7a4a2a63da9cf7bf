#include "twistmeans/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace twistmeans::sphere {

namespace {

// Certification budget: monomial count x node count.
constexpr double kCertifyBudget = 4e6;
// nodes per rule; keeps a cached S^5 rule below a few hundred MB
constexpr double kMaxNodes = 4e6;
constexpr double kExactnessTol = 1e-12;

std::vector<double> trapezoid_angles(int count) {
    std::vector<double> a(count);
    for (int i = 0; i < count; ++i) a[i] = 2.0 * kPi * i / count;
    return a;
}

SphereRule build_s2(double radius, int order) {
    const int m = order / 2 + 1;
    const int nphi = order + 1;
    const quadrature::Rule1D gl = quadrature::gauss_legendre(m, -1.0, 1.0);
    const std::vector<double> phi = trapezoid_angles(nphi);
    std::vector<double> coords;
    std::vector<double> weights;
    coords.reserve(static_cast<std::size_t>(3) * m * nphi);
    for (int i = 0; i < m; ++i) {
        const double t = gl.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (double a : phi) {
            coords.push_back(radius * s * std::cos(a));
            coords.push_back(radius * s * std::sin(a));
            coords.push_back(radius * t);
            weights.push_back(0.5 * gl.weights[i] / nphi);
        }
    }
    return SphereRule(3, radius, order, std::move(coords), std::move(weights));
}

// Points u of the simplex {u_j >= 0, sum u_j = 1} in n coordinates with
// weights for the density (n-1)! (uniform probability measure).
void simplex_rule(int n, int m, std::vector<std::vector<double>>& points, std::vector<double>& weights) {
    points.clear();
    weights.clear();
    if (n == 1) {
        points.push_back({1.0});
        weights.push_back(1.0);
        return;
    }
    const quadrature::Rule1D gl = quadrature::gauss_legendre(m, 0.0, 1.0);
    std::vector<int> idx(n - 1, 0);
    double factorial = 1.0;
    for (int j = 2; j <= n - 1; ++j) factorial *= j;
    while (true) {
        std::vector<double> u(n);
        double rest = 1.0;
        double w = factorial;
        for (int i = 0; i < n - 1; ++i) {
            const double s = gl.nodes[idx[i]];
            u[i] = rest * s;
            w *= gl.weights[idx[i]] * std::pow(1.0 - s, n - 2 - i);
            rest *= 1.0 - s;
        }
        u[n - 1] = rest;
        points.push_back(std::move(u));
        weights.push_back(w);
        int pos = 0;
        while (pos < n - 1 && ++idx[pos] == m) idx[pos++] = 0;
        if (pos == n - 1) break;
    }
}

SphereRule build_complex_sphere(int n, double radius, int order) {
    const int nphase = order + 1;
    const int m = order / 4 + 2;
    std::vector<std::vector<double>> simplex;
    std::vector<double> simplex_w;
    simplex_rule(n, m, simplex, simplex_w);
    const std::vector<double> theta = trapezoid_angles(nphase);

    std::size_t phase_count = 1;
    for (int j = 0; j < n; ++j) phase_count *= static_cast<std::size_t>(nphase);
    const double phase_w = 1.0 / static_cast<double>(phase_count);
    if (static_cast<double>(simplex.size()) * static_cast<double>(phase_count) > kMaxNodes)
        throw std::length_error("build_sphere_rule: order " + std::to_string(order) + " on S^" +
                                std::to_string(2 * n - 1) + " exceeds the node budget");

    std::vector<double> coords;
    std::vector<double> weights;
    coords.reserve(simplex.size() * phase_count * 2 * n);
    weights.reserve(simplex.size() * phase_count);
    std::vector<int> idx(n, 0);
    for (std::size_t s = 0; s < simplex.size(); ++s) {
        std::fill(idx.begin(), idx.end(), 0);
        for (std::size_t p = 0; p < phase_count; ++p) {
            for (int j = 0; j < n; ++j) {
                const double mod = radius * std::sqrt(simplex[s][j]);
                coords.push_back(mod * std::cos(theta[idx[j]]));
                coords.push_back(mod * std::sin(theta[idx[j]]));
            }
            weights.push_back(simplex_w[s] * phase_w);
            int pos = 0;
            while (pos < n && ++idx[pos] == nphase) idx[pos++] = 0;
        }
    }
    return SphereRule(2 * n, radius, order, std::move(coords), std::move(weights));
}

double binomial_count(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= static_cast<double>(n - k + j) / j;
    return r;
}

template <class Visit>
void for_each_exponent(int dim, int degree, std::vector<int>& a, int pos, int left, Visit&& visit) {
    if (pos == dim - 1) {
        a[pos] = left;
        visit(a);
        return;
    }
    for (int e = left; e >= 0; --e) {
        a[pos] = e;
        for_each_exponent(dim, degree, a, pos + 1, left - e, visit);
    }
}

}  // namespace

SphereRule::SphereRule(int real_dim, double radius, int order, std::vector<double> coords, std::vector<double> weights)
    : real_dim_(real_dim), radius_(radius), order_(order), coords_(std::move(coords)), weights_(std::move(weights)) {}

SphereRule SphereRule::scaled(double radius) const {
    std::vector<double> c = coords_;
    const double s = radius / radius_;
    for (double& x : c) x *= s;
    return SphereRule(real_dim_, radius, order_, std::move(c), weights_);
}

double sphere_area(int real_dim) {
    return 2.0 * std::pow(kPi, 0.5 * real_dim) / std::tgamma(0.5 * real_dim);
}

double monomial_moment(std::span<const int> exponents) {
    double log_num = 0.0;
    double half_sum = 0.0;
    for (int a : exponents) {
        if (a % 2 != 0) return 0.0;
        log_num += std::lgamma(0.5 * (a + 1));
        half_sum += 0.5 * (a + 1);
    }
    const double d = static_cast<double>(exponents.size());
    return std::exp(log_num - std::lgamma(half_sum) + std::lgamma(0.5 * d) - 0.5 * d * std::log(kPi));
}

double certify_exactness(const SphereRule& rule, int max_degree) {
    const int d = rule.real_dim();
    const double r = rule.radius();
    double worst = 0.0;
    std::vector<int> a(d, 0);
    std::vector<double> values(rule.size());
    for (int deg = 0; deg <= max_degree; ++deg) {
        for_each_exponent(d, deg, a, 0, deg, [&](const std::vector<int>& e) {
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const auto c = rule.coords(i);
                double v = rule.weight(i);
                for (int j = 0; j < d; ++j)
                    for (int p = 0; p < e[j]; ++p) v *= c[j] / r;
                values[i] = v;
            }
            const double got = quadrature::pairwise_sum(values);
            worst = std::max(worst, std::abs(got - monomial_moment(e)));
        });
    }
    return worst;
}

SphereRule build_sphere_rule(int real_dim, double radius, int order) {
    if (order < 1) throw std::invalid_argument("build_sphere_rule: order must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("build_sphere_rule: radius must be positive");
    SphereRule rule = [&] {
        switch (real_dim) {
            case 2: return build_complex_sphere(1, radius, order);
            case 3: return build_s2(radius, order);
            case 4: return build_complex_sphere(2, radius, order);
            case 6: return build_complex_sphere(3, radius, order);
            default:
                throw std::invalid_argument("build_sphere_rule: unsupported dimension " + std::to_string(real_dim) +
                                            " (supported: 2, 3, 4, 6)");
        }
    }();

    int degree = 0;
    while (degree < order &&
           binomial_count(degree + 1 + real_dim, real_dim) * static_cast<double>(rule.size()) <= kCertifyBudget)
        ++degree;
    const double err = certify_exactness(rule, degree);
    if (err > kExactnessTol)
        throw NumericalError("build_sphere_rule: exactness certification failed, error " + std::to_string(err));
    return rule;
}

int converged_order(int real_dim, double radius, double center_norm, double decay, double tol) {
    const bool complex_coords = real_dim % 2 == 0;
    const auto family = [&](const SphereRule& unit, int member) {
        return integrate_with_mass(unit, [&](const RealPoint& w) {
            RealPoint c(real_dim);
            // center spread over two coordinates so no axis is special
            c[0] = center_norm * 0.8;
            c[1] = center_norm * 0.6;
            const RealPoint x = radius * w;
            const RealPoint diff = c - x;
            Complex v = std::exp(-decay * diff.norm_sq());
            if (complex_coords) {
                double im = 0.0;
                for (int j = 0; j < real_dim / 2; ++j) im += c[2 * j + 1] * x[2 * j] - c[2 * j] * x[2 * j + 1];
                v *= std::polar(1.0, 0.5 * im);
            }
            if (member == 1) v *= w[0];
            if (member == 2) v *= w[0] * w[1] + w[real_dim - 1] * w[real_dim - 1];
            return v;
        });
    };
    int order = 8;
    SphereRule coarse = build_sphere_rule(real_dim, 1.0, order);
    while (order < 512) {
        SphereRule fine = [&] {
            try {
                return build_sphere_rule(real_dim, 1.0, 2 * order);
            } catch (const std::length_error&) {
                throw NumericalError("converged_order: node budget reached before convergence");
            }
        }();
        bool ok = true;
        for (int member = 0; member < 3 && ok; ++member) {
            const SphereAverage a = family(coarse, member);
            const SphereAverage b = family(fine, member);
            ok = std::abs(a.value - b.value) < tol * std::max(b.abs_mass, 1e-300);
        }
        if (ok) return order;
        order *= 2;
        coarse = std::move(fine);
    }
    throw NumericalError("converged_order: no convergence below order 512");
}

}  // namespace twistmeans::sphere
