#include "twistmeans/means.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "twistmeans/special_functions.hpp"

namespace twistmeans::means {

namespace {

std::mutex g_cache_mutex;

const quadrature::Rule1D& laguerre_rule(int nodes, double alpha) {
    static std::map<std::pair<int, double>, std::unique_ptr<quadrature::Rule1D>> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto& slot = cache[{nodes, alpha}];
    if (!slot) slot = std::make_unique<quadrature::Rule1D>(quadrature::gauss_laguerre(nodes, alpha));
    return *slot;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

const sphere::SphereRule& unit_rule(int real_dim, int order) {
    static std::map<std::pair<int, int>, std::unique_ptr<sphere::SphereRule>> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto& slot = cache[{real_dim, order}];
    if (!slot) slot = std::make_unique<sphere::SphereRule>(sphere::build_sphere_rule(real_dim, 1.0, order));
    return *slot;
}

Field twisted_translate(Field f, const ComplexPoint& eta) {
    return [f = std::move(f), eta](const ComplexPoint& xi) {
        return f(xi - eta) * std::polar(1.0, 0.5 * symplectic(eta, xi));
    };
}

Complex projection_coefficient(const RadialProfile& a, int k, int m, int nodes) {
    if (k < 0 || m < 1) throw std::invalid_argument("projection_coefficient: need k >= 0, m >= 1");
    // B_k (2pi)^{-m} |S^{2m-1}| int a phi_k rho^{2m-1} drho
    //   = B_k / (m-1)! int t^{m-1} e^{-t} [a(sqrt(2t)) e^{t/2} L_k^{m-1}(t)] dt
    const quadrature::Rule1D& rule = laguerre_rule(nodes, m - 1.0);
    std::vector<Complex> terms(rule.nodes.size());
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        terms[i] = rule.weights[i] * a(std::sqrt(2.0 * t)) * std::exp(0.5 * t) *
                   special::laguerre_eval({k, m - 1.0}, t);
        total += std::abs(terms[i]);
    }
    if (std::abs(terms.back()) > 1e-8 * total)
        throw NumericalError("projection_coefficient: profile does not decay fast enough (non-integrable)");
    const double b = special::b_constant(k, m).to_double();
    return b / factorial(m - 1) * quadrature::pairwise_sum(terms);
}

RadialProfile radial_projection(const RadialProfile& a, int k, int m, int nodes) {
    return RadialProfile::laguerre_function(k, m, projection_coefficient(a, k, m, nodes));
}

Complex radial_twisted_convolution_factor(const RadialProfile& a, int j, int m, int nodes) {
    return std::pow(2.0 * kPi, m) * projection_coefficient(a, j, m, nodes);
}

int scheduled_order(double r, double center_norm, int extra_degree) {
    const double need = 16.0 + 2.5 * r * center_norm + 1.5 * r + extra_degree;
    int order = static_cast<int>(std::ceil(need / 4.0)) * 4;
    return std::min(order, 192);
}

std::vector<HeckeBochnerPoint> hecke_bochner_check(const RadialProfile& a, const ComplexPoly& p_poly, int p, int q,
                                                   std::span<const int> ks, std::span<const ComplexPoint> zs,
                                                   int radial_panels, int panel_nodes) {
    const int n = p_poly.dim();
    const int big_n = n + p + q;
    const auto f = [&](const ComplexPoint& u) { return a(u.norm()) * p_poly.eval(u); };
    const double area = sphere::sphere_area(2 * n);

    // right side factors depend only on k
    std::map<int, Complex> rhs_factor;
    for (int k : ks)
        if (k >= p) rhs_factor[k] = std::pow(2.0 * kPi, -(p + q)) * radial_twisted_convolution_factor(a, k - p, big_n);

    std::vector<HeckeBochnerPoint> out;
    for (const ComplexPoint& z : zs) {
        const double c = z.norm();
        const quadrature::Rule1D radial = quadrature::composite_gauss_legendre(radial_panels, panel_nodes, 0.0, c + 9.0);
        std::vector<MeanValue> means(radial.nodes.size());
        for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
            const double r = radial.nodes[i];
            const auto& rule = unit_rule(2 * n, scheduled_order(r, c, p + q));
            means[i] = twisted_mean(f, MeanQuery{z, r}, rule);
        }
        for (int k : ks) {
            std::vector<Complex> terms(radial.nodes.size());
            double scale = 0.0;
            for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
                const double r = radial.nodes[i];
                const double g = radial.weights[i] * std::pow(r, 2 * n - 1) * special::phi_eval({k, n}, r);
                terms[i] = g * means[i].value;
                scale += std::abs(g) * means[i].mass;
            }
            HeckeBochnerPoint pt;
            pt.z = z;
            pt.k = k;
            pt.lhs = area * quadrature::pairwise_sum(terms);
            pt.scale = area * scale;
            pt.vanishing = k < p;
            pt.rhs = pt.vanishing ? Complex(0.0)
                                  : rhs_factor[k] * p_poly.eval(z) * special::phi_eval({k - p, big_n}, c);
            pt.residual = std::abs(pt.lhs - pt.rhs) / std::max(pt.scale, std::abs(pt.rhs));
            out.push_back(pt);
        }
    }
    return out;
}

double c_closed_form(int n, int p, int q) {
    return std::pow(2.0, -(p + q)) * factorial(n - 1) / factorial(n + p + q - 1);
}

CResult determine_C(int n, const ComplexPoly& p_poly, int p, int q, std::span<const int> ks,
                    std::span<const std::pair<ComplexPoint, double>> samples, double min_denominator) {
    const int big_n = n + p + q;
    CResult res;
    res.closed_form = c_closed_form(n, p, q);
    for (int k : ks) {
        if (k < q) throw std::invalid_argument("determine_C: needs k >= q (the mean vanishes otherwise)");
        const RadialProfile phi = RadialProfile::laguerre_function(k, n);
        const auto f = [&](const ComplexPoint& u) { return phi(u.norm()); };
        const double b = special::b_constant(k - q, big_n).to_double();
        for (const auto& [z, r] : samples) {
            const auto& rule = unit_rule(2 * n, scheduled_order(r, z.norm(), 2 * k + p + q));
            const MeanValue m = weighted_twisted_mean(f, z, r, p_poly, rule);
            if (std::abs(m.value) < min_denominator * m.mass)
                throw std::domain_error("determine_C: degenerate sample (mean cancels), resample");
            const Complex den = std::pow(r, 2 * (p + q)) * special::phi_eval({k - q, big_n}, r) * p_poly.eval(z) *
                                special::phi_eval({k - q, big_n}, z.norm());
            if (std::abs(den) == 0.0) throw std::domain_error("determine_C: zero denominator, resample");
            CSample s{z, r, k, m.value / den, m.value / den / b, m.mass};
            res.samples.push_back(s);
        }
    }
    Complex mean = 0.0;
    for (const auto& s : res.samples) mean += s.kappa;
    mean /= static_cast<double>(res.samples.size());
    res.kappa = mean;
    for (const auto& s : res.samples) res.kappa_spread = std::max(res.kappa_spread, std::abs(s.kappa - mean) / std::abs(mean));
    for (int k : ks) {
        Complex rk = 0.0;
        int cnt = 0;
        for (const auto& s : res.samples)
            if (s.k == k) {
                rk += s.ratio;
                ++cnt;
            }
        rk /= static_cast<double>(cnt);
        for (const auto& s : res.samples)
            if (s.k == k) res.ratio_spread = std::max(res.ratio_spread, std::abs(s.ratio - rk) / std::abs(rk));
    }
    return res;
}

double lambda_reduction_check(const Field& f, const ComplexPoint& z, double s, double lambda,
                              const sphere::SphereRule& unit) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda_reduction_check: lambda must be positive");
    const double root = std::sqrt(lambda);
    const MeanValue lhs = twisted_mean(f, MeanQuery{z, s, lambda}, unit);
    const auto g = [&](const ComplexPoint& u) { return f((1.0 / root) * u); };
    const MeanValue rhs = twisted_mean(g, MeanQuery{root * z, root * s, 1.0}, unit);
    return std::abs(lhs.value - rhs.value) / std::max({lhs.mass, rhs.mass, 1e-300});
}

}  // namespace twistmeans::means
